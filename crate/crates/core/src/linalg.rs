//! Exact dense linear algebra over any [`Field`].
//!
//! All routines share one elimination kernel with a fixed pivot policy:
//! columns left to right, and within a column the first nonzero entry from
//! the top. Echelon forms and null-space bases are therefore reproducible.

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, entries: Vec<F::Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(field: F, cols: usize, rows: &[Vec<F::Elem>]) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                r.len()
            )));
        }
        let entries = rows.iter().flatten().cloned().collect();
        Matrix::new(field, rows.len(), cols, entries)
    }

    pub fn from_fn(
        field: F,
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> F::Elem,
    ) -> Self {
        let entries = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        Matrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let (zero, one) = (field.zero(), field.one());
        Matrix::from_fn(
            field,
            n,
            n,
            |i, j| if i == j { one.clone() } else { zero.clone() },
        )
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.field.clone(), self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    /// Sub-matrix on the given row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(self.field.clone(), rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Reduces to reduced row echelon form in place; returns the pivot
    /// columns and the parity of the row swaps performed.
    fn rref_in_place(&mut self) -> (Vec<usize>, bool) {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut odd = false;
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.entries.swap(pr * cols + j, r * cols + j);
                }
                odd = !odd;
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..cols {
                self.entries[r * cols + j] = f.mul(&self.entries[r * cols + j], &inv);
            }
            for i in 0..self.rows {
                if i == r || f.is_zero(self.get(i, c)) {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..cols {
                    let t = f.mul(&factor, &self.entries[r * cols + j]);
                    self.entries[i * cols + j] = f.sub(&self.entries[i * cols + j], &t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, odd)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let (pivots, _) = m.rref_in_place();
        (m, pivots)
    }
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    m.rref().1.len()
}

/// Exact determinant: cofactor expansion up to 3x3, elimination beyond.
pub fn det_exact<F: Field>(m: &Matrix<F>) -> Result<F::Elem> {
    if m.rows != m.cols {
        return Err(Error::DimensionMismatch(format!(
            "determinant of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let f = &m.field;
    let a = |i, j| m.get(i, j);
    Ok(match m.rows {
        0 => f.one(),
        1 => a(0, 0).clone(),
        2 => f.sub(&f.mul(a(0, 0), a(1, 1)), &f.mul(a(0, 1), a(1, 0))),
        3 => {
            let minor =
                |r1, r2, c1, c2| f.sub(&f.mul(a(r1, c1), a(r2, c2)), &f.mul(a(r1, c2), a(r2, c1)));
            let t0 = f.mul(a(0, 0), &minor(1, 2, 1, 2));
            let t1 = f.mul(a(0, 1), &minor(1, 2, 0, 2));
            let t2 = f.mul(a(0, 2), &minor(1, 2, 0, 1));
            f.add(&f.sub(&t0, &t1), &t2)
        }
        n => {
            // Plain elimination, tracking the product of pivots and swaps.
            let mut w = m.clone();
            let mut acc = f.one();
            let cols = n;
            for c in 0..n {
                let Some(pr) = (c..n).find(|&i| !f.is_zero(w.get(i, c))) else {
                    return Ok(f.zero());
                };
                if pr != c {
                    for j in 0..cols {
                        w.entries.swap(pr * cols + j, c * cols + j);
                    }
                    acc = f.neg(&acc);
                }
                let piv = w.get(c, c).clone();
                acc = f.mul(&acc, &piv);
                let inv = f.inv(&piv).expect("pivot is nonzero");
                for i in c + 1..n {
                    if f.is_zero(w.get(i, c)) {
                        continue;
                    }
                    let factor = f.mul(w.get(i, c), &inv);
                    for j in c..cols {
                        let t = f.mul(&factor, &w.entries[c * cols + j]);
                        w.entries[i * cols + j] = f.sub(&w.entries[i * cols + j], &t);
                    }
                }
            }
            acc
        }
    })
}

/// Basis of the right null space: one vector per free column, with that
/// column set to 1, in increasing column order.
pub fn null_space<F: Field>(m: &Matrix<F>) -> Vec<Vec<F::Elem>> {
    let (r, pivots) = m.rref();
    let f = &m.field;
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); m.cols];
            v[free] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, free));
            }
            v
        })
        .collect()
}

/// Basis of `span(a) ∩ span(b)`.
pub fn subspace_intersect<F: Field>(
    field: &F,
    a: &[Vec<F::Elem>],
    b: &[Vec<F::Elem>],
) -> Result<Vec<Vec<F::Elem>>> {
    let n = match a.first().or(b.first()) {
        Some(v) => v.len(),
        None => return Ok(Vec::new()),
    };
    if a.iter().chain(b).any(|v| v.len() != n) {
        return Err(Error::DimensionMismatch(
            "subspaces live in different ambient spaces".into(),
        ));
    }
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    // Columns: a_1..a_r, -b_1..-b_s; a null vector (x, y) gives sum x_i a_i.
    let cols = a.len() + b.len();
    let sys = Matrix::from_fn(field.clone(), n, cols, |i, j| {
        if j < a.len() {
            a[j][i].clone()
        } else {
            field.neg(&b[j - a.len()][i])
        }
    });
    let mut basis = RowEchelon::new(field.clone(), n);
    let mut out = Vec::new();
    for x in null_space(&sys) {
        let mut w = vec![field.zero(); n];
        for (coef, vec) in x[..a.len()].iter().zip(a) {
            if field.is_zero(coef) {
                continue;
            }
            for (wi, vi) in w.iter_mut().zip(vec) {
                *wi = field.add(wi, &field.mul(coef, vi));
            }
        }
        if basis.insert(&w) {
            out.push(w);
        }
    }
    Ok(out)
}

/// An incrementally grown row space kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct RowEchelon<F: Field> {
    field: F,
    width: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> RowEchelon<F> {
    pub fn new(field: F, width: usize) -> Self {
        RowEchelon {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Basis rows, sorted by pivot column, each with pivot entry 1 and
    /// zeros in every other pivot column.
    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&w[pc]) {
                continue;
            }
            let c = w[pc].clone();
            for (wj, rj) in w.iter_mut().zip(row) {
                if !f.is_zero(rj) {
                    *wj = f.sub(wj, &f.mul(&c, rj));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.width, "row width mismatch");
        let f = self.field.clone();
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[pc]).unwrap();
        for x in w.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // Keep the form reduced: clear the new pivot column from old rows.
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[pc]) {
                continue;
            }
            let c = row[pc].clone();
            for (rj, wj) in row.iter_mut().zip(&w) {
                if !f.is_zero(wj) {
                    *rj = f.sub(rj, &f.mul(&c, wj));
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, w);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::CyclotomicField;
    use crate::ff::{make_field, FiniteField};
    use crate::field::Rationals;

    fn gf(p: u64) -> FiniteField {
        make_field(p, 1, None).unwrap()
    }

    fn ints<F: Field>(f: &F, rows: &[&[i64]]) -> Matrix<F> {
        let r: Vec<Vec<_>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| f.from_int(x)).collect())
            .collect();
        Matrix::from_rows(f.clone(), r[0].len(), &r).unwrap()
    }

    fn circulant<F: Field>(f: &F, first: &[i64]) -> Matrix<F> {
        let n = first.len();
        Matrix::from_fn(f.clone(), n, n, |i, j| f.from_int(first[(j + n - i) % n]))
    }

    #[test]
    fn rank_examples() {
        let f2 = gf(2);
        assert_eq!(rank(&Matrix::identity(f2.clone(), 3)), 3);
        assert_eq!(rank(&ints(&gf(5), &[&[1, 1], &[1, 1]])), 1);
        // Cyclic shifts of 1 + X + X^3 over GF(2).
        assert_eq!(rank(&circulant(&f2, &[1, 1, 0, 1, 0, 0, 0])), 4);
    }

    #[test]
    fn det_examples() {
        let k = CyclotomicField::new(3).unwrap();
        let m = Matrix::from_rows(
            k.clone(),
            2,
            &[vec![k.one(), k.one()], vec![k.one(), k.cyclo_from_power(1)]],
        )
        .unwrap();
        let d = det_exact(&m).unwrap();
        assert_eq!(d, k.sub(&k.cyclo_from_power(1), &k.one()));
        assert!(!k.is_zero(&d));

        assert!(Rationals.is_zero(&det_exact(&ints(&Rationals, &[&[1, 1], &[1, 1]])).unwrap()));
        let one = Matrix::from_rows(k.clone(), 1, &[vec![k.cyclo_from_power(2)]]).unwrap();
        assert_eq!(det_exact(&one).unwrap(), k.cyclo_from_power(2));
        assert!(det_exact(&ints(&Rationals, &[&[1, 2]])).is_err());
    }

    #[test]
    fn det_by_elimination_matches_cofactor() {
        let q = Rationals;
        let m = ints(
            &q,
            &[&[2, -1, 0, 3], &[1, 4, 1, 0], &[0, 2, 5, 1], &[3, 0, 1, 1]],
        );
        // Leibniz formula as the oracle.
        let mut brute = q.zero();
        for perm in permutations(4) {
            let mut term = q.from_int(sign(&perm));
            for (i, &j) in perm.iter().enumerate() {
                term = q.mul(&term, m.get(i, j));
            }
            brute = q.add(&brute, &term);
        }
        assert_eq!(det_exact(&m).unwrap(), brute);
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn sign(p: &[usize]) -> i64 {
        let mut s = 1;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    s = -s;
                }
            }
        }
        s
    }

    #[test]
    fn null_space_examples() {
        let f2 = gf(2);
        assert!(null_space(&Matrix::identity(f2.clone(), 4)).is_empty());
        let ns = null_space(&ints(&f2, &[&[1, 1]]));
        assert_eq!(ns, vec![vec![f2.one(), f2.one()]]);
        // Shifts of X^4+X^3+X^2+1; gcd with X^7-1 has degree 4, so rank 3.
        let m = circulant(&f2, &[1, 0, 1, 1, 1, 0, 0]);
        let ns = null_space(&m);
        assert_eq!(rank(&m), 3);
        assert_eq!(ns.len(), 4);
        for v in &ns {
            assert!(m.mul_vec(v).unwrap().iter().all(|x| f2.is_zero(x)));
        }
    }

    #[test]
    fn intersections() {
        let q = Rationals;
        let e = |i: usize| {
            (0..3)
                .map(|j| q.from_int((i == j) as i64))
                .collect::<Vec<_>>()
        };
        let meet = subspace_intersect(&q, &[e(0), e(1)], &[e(1), e(2)]).unwrap();
        assert_eq!(meet.len(), 1);
        let mut span = RowEchelon::new(q, 3);
        span.insert(&meet[0]);
        assert!(span.contains(&e(1)));

        let a = vec![e(0), e(2)];
        assert_eq!(subspace_intersect(&q, &a, &a).unwrap().len(), 2);

        let f2 = gf(2);
        let v = |x: [i64; 3]| x.iter().map(|&c| f2.from_int(c)).collect::<Vec<_>>();
        let meet = subspace_intersect(&f2, &[v([1, 1, 0]), v([0, 1, 1])], &[v([1, 0, 1])]).unwrap();
        assert_eq!(meet, vec![v([1, 0, 1])]);

        assert!(subspace_intersect(&f2, &[v([1, 1, 0])], &[vec![f2.one()]]).is_err());
    }

    #[test]
    fn echelon_insert_tracks_rank() {
        let f3 = gf(3);
        let m = ints(
            &f3,
            &[&[1, 2, 0, 1], &[2, 1, 0, 2], &[0, 0, 1, 1], &[1, 2, 1, 2]],
        );
        let mut e = RowEchelon::new(f3.clone(), 4);
        for i in 0..4 {
            e.insert(m.row(i));
        }
        assert_eq!(e.dim(), rank(&m));
        assert_eq!(e.dim(), 2);
    }
}
