//! Permutation modules `F[S]`: supports, generated submodules, the support
//! and dimension inequalities, and constructions reaching equality.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{FieldElement, FiniteField};
use crate::field::Field;
use crate::linalg::{rank, subspace_intersect, Matrix, RowEchelon};
use crate::permgrp::{affine, PermGroup, Permutation};

/// A vector of `F[S]`; `coeffs[i]` is the coefficient of point `i`.
#[derive(Clone, Debug)]
pub struct ModVector<F: Field> {
    group: Arc<PermGroup>,
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> ModVector<F> {
    pub fn new(group: Arc<PermGroup>, field: F, coeffs: Vec<F::Elem>) -> Result<Self> {
        if coeffs.len() != group.degree() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a group of degree {}",
                coeffs.len(),
                group.degree()
            )));
        }
        Ok(ModVector {
            group,
            field,
            coeffs,
        })
    }

    pub fn from_ints(group: Arc<PermGroup>, field: F, coeffs: &[i64]) -> Result<Self> {
        let c = coeffs.iter().map(|&x| field.from_int(x)).collect();
        ModVector::new(group, field, c)
    }

    /// Sum of the given points.
    pub fn indicator(group: Arc<PermGroup>, field: F, points: &[usize]) -> Result<Self> {
        let mut c = vec![field.zero(); group.degree()];
        for &x in points {
            if x >= c.len() {
                return Err(Error::InvalidArgument(format!("point {x} out of range")));
            }
            c[x] = field.one();
        }
        ModVector::new(group, field, c)
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn support(&self) -> Vec<usize> {
        support_of(&self.field, &self.coeffs)
    }

    /// t(v), the support size.
    pub fn t(&self) -> usize {
        self.coeffs
            .iter()
            .filter(|c| !self.field.is_zero(c))
            .count()
    }

    /// The translate `v·g`: the coefficient of `i` moves to `i·g`.
    pub fn translate(&self, g: &Permutation) -> Self {
        ModVector {
            group: self.group.clone(),
            field: self.field.clone(),
            coeffs: translate_coeffs(&self.field, &self.coeffs, g),
        }
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| self.field.render(c)).collect();
        parts.join(",")
    }
}

fn support_of<F: Field>(field: &F, coeffs: &[F::Elem]) -> Vec<usize> {
    (0..coeffs.len())
        .filter(|&i| !field.is_zero(&coeffs[i]))
        .collect()
}

fn translate_coeffs<F: Field>(field: &F, coeffs: &[F::Elem], g: &Permutation) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); coeffs.len()];
    for (i, c) in coeffs.iter().enumerate() {
        out[g.image(i)] = c.clone();
    }
    out
}

/// A G-submodule of `F[S]` kept as a reduced echelon basis.
#[derive(Clone, Debug)]
pub struct SubmoduleBasis<F: Field> {
    group: Arc<PermGroup>,
    echelon: RowEchelon<F>,
}

impl<F: Field> SubmoduleBasis<F> {
    pub fn dim(&self) -> usize {
        self.echelon.dim()
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        self.echelon.rows()
    }

    pub fn field(&self) -> &F {
        self.echelon.field()
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.echelon.contains(v)
    }

    /// Every basis row translated by every generator stays inside.
    pub fn is_closed(&self) -> bool {
        let f = self.field();
        self.rows().iter().all(|r| {
            self.group
                .generators()
                .iter()
                .all(|g| self.contains(&translate_coeffs(f, r, g)))
        })
    }
}

/// Smallest submodule containing the given vectors: insert each seed, then
/// translate every newly added vector by every generator until stable.
pub fn submodule_generated_by<F: Field>(
    group: Arc<PermGroup>,
    field: &F,
    seeds: &[Vec<F::Elem>],
) -> Result<SubmoduleBasis<F>> {
    let n = group.degree();
    let mut echelon = RowEchelon::new(field.clone(), n);
    let mut queue = VecDeque::new();
    for s in seeds {
        if s.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "seed of length {} in a module of rank {n}",
                s.len()
            )));
        }
        if echelon.insert(s) {
            queue.push_back(s.clone());
        }
    }
    while let Some(u) = queue.pop_front() {
        if echelon.dim() == n {
            break;
        }
        for g in group.generators() {
            let w = translate_coeffs(field, &u, g);
            if echelon.insert(&w) {
                queue.push_back(w);
            }
        }
    }
    Ok(SubmoduleBasis { group, echelon })
}

/// `<v>`, the span of all translates of `v`.
pub fn generated_submodule<F: Field>(v: &ModVector<F>) -> Result<SubmoduleBasis<F>> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    submodule_generated_by(v.group.clone(), &v.field, std::slice::from_ref(&v.coeffs))
}

/// d(v) as the rank of the matrix of all |G| translates. Slow reference
/// for [`generated_submodule`].
pub fn dim_by_translates<F: Field>(v: &ModVector<F>) -> Result<usize> {
    let elems = v.group.elements()?;
    let rows: Vec<Vec<F::Elem>> = elems
        .iter()
        .map(|g| translate_coeffs(&v.field, &v.coeffs, g))
        .collect();
    Ok(rank(&Matrix::from_rows(v.field.clone(), v.n(), &rows)?))
}

/// Distinct translates of a point set, found from the generators.
pub fn translate_family(group: &PermGroup, set: &[usize]) -> Vec<Vec<usize>> {
    let mut base = set.to_vec();
    base.sort_unstable();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([base.clone()]);
    let mut out = vec![base];
    let mut head = 0;
    while head < out.len() {
        let cur = out[head].clone();
        head += 1;
        for g in group.generators() {
            let img = g.apply_set(&cur);
            if seen.insert(img.clone()) {
                out.push(img);
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EqualityCase {
    /// No equality in either inequality.
    #[serde(rename = "none")]
    None,
    #[serde(rename = "t=1")]
    SinglePoint,
    /// t = n - 1 with a two-dimensional submodule.
    #[serde(rename = "t=n-1")]
    Complement,
    /// td = n.
    #[serde(rename = "block-equality")]
    Block,
    /// (t+1)d = 2n with 1 < t < n-1.
    #[serde(rename = "pairs-equality")]
    Pairs,
}

impl EqualityCase {
    pub fn label(self) -> &'static str {
        match self {
            EqualityCase::None => "none",
            EqualityCase::SinglePoint => "t=1",
            EqualityCase::Complement => "t=n-1",
            EqualityCase::Block => "block-equality",
            EqualityCase::Pairs => "pairs-equality",
        }
    }
}

/// The six structural conclusions that hold at equality in the
/// primitive bound with 1 < t < n-1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conclusions {
    /// Each point lies in exactly two translate supports, and two distinct
    /// supports share exactly one point.
    pub a: bool,
    /// G is 2-transitive on the supports and primitive on pairs of them.
    pub b: bool,
    /// d = |Omega| - 1 = t.
    pub c: bool,
    /// Each support is transitively permuted by its setwise stabilizer.
    pub d: bool,
    /// v is a multiple of the sum of its support.
    pub e: bool,
    /// The field has characteristic 2.
    pub f: bool,
}

impl Conclusions {
    pub fn all(&self) -> bool {
        self.a && self.b && self.c && self.d && self.e && self.f
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityReport {
    pub n: usize,
    pub t: usize,
    pub d: usize,
    /// td >= n.
    #[serde(rename = "holds_B")]
    pub holds_b: bool,
    /// (t+1)d >= 2n; `None` unless the group is primitive and t < n.
    #[serde(rename = "holds_C")]
    pub holds_c: Option<bool>,
    pub primitive: bool,
    pub case: EqualityCase,
    pub omega_size: usize,
    pub conclusions: Option<Conclusions>,
}

impl EqualityReport {
    /// Fails with [`Error::InvariantViolation`] if a proven bound is broken.
    pub fn check(&self) -> Result<()> {
        if !self.holds_b {
            return Err(Error::InvariantViolation(format!(
                "td = {} < n = {}",
                self.t * self.d,
                self.n
            )));
        }
        if self.holds_c == Some(false) {
            return Err(Error::InvariantViolation(format!(
                "(t+1)d = {} < 2n = {} in a primitive group",
                (self.t + 1) * self.d,
                2 * self.n
            )));
        }
        if let Some(c) = &self.conclusions {
            if !c.all() {
                return Err(Error::InvariantViolation(format!(
                    "equality structure fails: {c:?}"
                )));
            }
        }
        Ok(())
    }
}

/// Computes t, d and n, evaluates both inequalities and classifies the
/// equality case. Bounds are reported, not enforced; see
/// [`EqualityReport::check`].
pub fn verify_inequalities<F: Field>(v: &ModVector<F>) -> Result<EqualityReport> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = &v.group;
    if !g.is_transitive() {
        return Err(Error::Intransitive);
    }
    let n = v.n();
    let t = v.t();
    let d = generated_submodule(v)?.dim();
    let primitive = g.is_primitive()?;
    let holds_c = (primitive && t < n).then_some((t + 1) * d >= 2 * n);
    let case = classify(n, t, d, primitive);
    let omega_size = translate_family(g, &v.support()).len();
    let conclusions = if case == EqualityCase::Pairs {
        Some(analyze(v, t, d)?)
    } else {
        None
    };
    Ok(EqualityReport {
        n,
        t,
        d,
        holds_b: t * d >= n,
        holds_c,
        primitive,
        case,
        omega_size,
        conclusions,
    })
}

fn classify(n: usize, t: usize, d: usize, primitive: bool) -> EqualityCase {
    let c_equal = (t + 1) * d == 2 * n;
    if t == 1 {
        EqualityCase::SinglePoint
    } else if n >= 2 && t == n - 1 && c_equal {
        EqualityCase::Complement
    } else if t * d == n {
        EqualityCase::Block
    } else if primitive && c_equal && 1 < t && t + 1 < n {
        EqualityCase::Pairs
    } else {
        EqualityCase::None
    }
}

/// Checks the six structural conclusions for an equality instance of the
/// primitive bound with 1 < t < n-1.
pub fn equality_analysis<F: Field>(v: &ModVector<F>) -> Result<Conclusions> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let (n, t) = (v.n(), v.t());
    let d = generated_submodule(v)?.dim();
    let primitive = v.group.is_transitive() && v.group.is_primitive()?;
    if !primitive || (t + 1) * d != 2 * n || t <= 1 || t + 1 >= n {
        return Err(Error::Precondition("not an equality instance".into()));
    }
    analyze(v, t, d)
}

fn analyze<F: Field>(v: &ModVector<F>, t: usize, d: usize) -> Result<Conclusions> {
    let g = &v.group;
    let n = v.n();
    let omega = translate_family(g, &v.support());
    let r = omega.len();

    let mut cover = vec![0usize; n];
    for x in omega.iter().flatten() {
        cover[*x] += 1;
    }
    let meets_once = omega.iter().enumerate().all(|(i, x)| {
        omega[i + 1..]
            .iter()
            .all(|y| x.iter().filter(|p| y.binary_search(p).is_ok()).count() == 1)
    });
    let a = cover.iter().all(|&c| c == 2) && meets_once;

    let on_omega = g.action_on_sets(&omega)?;
    let b = r >= 2
        && on_omega.is_doubly_transitive()?
        && (r == 2 || on_omega.pairs_action()?.is_primitive()?);

    let c = d + 1 == r && d == t;

    let mut dd = true;
    for x in &omega {
        let stab = g.setwise_stabilizer(x)?;
        let reach: HashSet<usize> = stab.iter().map(|h| h.image(x[0])).collect();
        dd &= reach.len() == x.len();
    }

    let nonzero: Vec<&F::Elem> = v.coeffs.iter().filter(|c| !v.field.is_zero(c)).collect();
    let e = nonzero.windows(2).all(|w| w[0] == w[1]);
    let f = v.field.characteristic() == 2;
    Ok(Conclusions {
        a,
        b,
        c,
        d: dd,
        e,
        f,
    })
}

/// Block construction: for a block `delta`, a homomorphism `lambda` from
/// its setwise stabilizer into the units, trivial on the stabilizer of the
/// base point x = min(delta), the vector with coefficient
/// `lambda(h^-1)` at `x·h`. Reaches td = n.
pub fn block_vector<F: Field>(
    group: Arc<PermGroup>,
    delta: &[usize],
    field: F,
    lambda: impl Fn(&Permutation) -> F::Elem,
) -> Result<ModVector<F>> {
    group.block_system(delta)?;
    let x = *delta.iter().min().expect("nonempty block");
    let stab = group.setwise_stabilizer(delta)?;
    let values: Vec<F::Elem> = stab.iter().map(&lambda).collect();
    if values.iter().any(|l| field.is_zero(l)) {
        return Err(Error::Precondition("lambda takes the value 0".into()));
    }
    let pos: std::collections::HashMap<&Permutation, usize> =
        stab.iter().enumerate().map(|(i, h)| (h, i)).collect();
    for (i, a) in stab.iter().enumerate() {
        for (j, b) in stab.iter().enumerate() {
            let k = pos[&a.compose(b)];
            if values[k] != field.mul(&values[i], &values[j]) {
                return Err(Error::Precondition("lambda is not a homomorphism".into()));
            }
        }
        if a.image(x) == x && !field.is_one(&values[i]) {
            return Err(Error::Precondition(
                "lambda is nontrivial on the point stabilizer".into(),
            ));
        }
    }
    let mut coeffs = vec![field.zero(); group.degree()];
    for h in &stab {
        coeffs[h.image(x)] = lambda(&h.inverse());
    }
    let v = ModVector::new(group, field, coeffs)?;
    let d = generated_submodule(&v)?.dim();
    if v.t() * d != v.n() {
        return Err(Error::InvariantViolation(format!(
            "block vector has td = {} != n = {}",
            v.t() * d,
            v.n()
        )));
    }
    Ok(v)
}

/// A nonzero vector of `m` supported on the first `n + 1 - dim(m)` points,
/// so that t + d <= n + 1.
pub fn small_support_vector<F: Field>(m: &SubmoduleBasis<F>) -> Result<ModVector<F>> {
    if m.dim() == 0 {
        return Err(Error::ZeroVector);
    }
    let f = m.field();
    let n = m.group.degree();
    let k = n + 1 - m.dim();
    let coords: Vec<Vec<F::Elem>> = (0..k)
        .map(|i| {
            let mut e = vec![f.zero(); n];
            e[i] = f.one();
            e
        })
        .collect();
    let meet = subspace_intersect(f, &coords, m.rows())?;
    let w = meet
        .into_iter()
        .next()
        .ok_or_else(|| Error::InvariantViolation("dimension count gives a nonzero meet".into()))?;
    let v = ModVector::new(m.group.clone(), f.clone(), w)?;
    let d = generated_submodule(&v)?.dim();
    if v.t() + d > n + 1 {
        return Err(Error::InvariantViolation(format!(
            "t + d = {} > n + 1 = {}",
            v.t() + d,
            n + 1
        )));
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitSumReport {
    pub t: usize,
    pub d: usize,
    pub n: usize,
    /// |G:K|.
    pub index: usize,
    /// t = |K : H∩K|.
    pub a: bool,
    /// t |G:K| = 2n.
    pub b: bool,
    /// d is |G:K| or |G:K| - 1.
    pub c: bool,
    /// In characteristic 2, d = |G:K| - 1.
    pub d_char2: bool,
}

/// Sum of the points in the K-orbit of `x`, for a subgroup K (given by its
/// elements) with |H : H∩K| = 2, K not inside H = G_x, and K intransitive.
pub fn orbit_sum_vector<F: Field>(
    group: Arc<PermGroup>,
    x: usize,
    k: &[Permutation],
    field: F,
) -> Result<(ModVector<F>, OrbitSumReport)> {
    if !group.is_transitive() || !group.is_primitive()? {
        return Err(Error::Precondition("group is not primitive".into()));
    }
    let n = group.degree();
    let kset: HashSet<&Permutation> = k.iter().collect();
    if !kset.contains(&Permutation::identity(n))
        || k.iter()
            .any(|a| k.iter().any(|b| !kset.contains(&a.compose(b))))
    {
        return Err(Error::InvalidArgument("K is not a subgroup".into()));
    }
    let h = group.point_stabilizer(x)?;
    let hk = h.iter().filter(|g| kset.contains(g)).count();
    if h.len() != 2 * hk {
        return Err(Error::Precondition("|H : H∩K| is not 2".into()));
    }
    if hk == kset.len() {
        return Err(Error::Precondition("K contained in H".into()));
    }
    let ksub = PermGroup::from_elements(n, k.to_vec())?;
    if ksub.is_transitive() {
        return Err(Error::Precondition("K is transitive".into()));
    }
    let orbit = ksub.orbit(x);
    let v = ModVector::indicator(group.clone(), field, &orbit)?;
    let t = v.t();
    let d = generated_submodule(&v)?.dim();
    let index = group.order()? / kset.len();
    let report = OrbitSumReport {
        t,
        d,
        n,
        index,
        a: t == kset.len() / hk,
        b: t * index == 2 * n,
        c: d == index || d + 1 == index,
        d_char2: v.field.characteristic() != 2 || d + 1 == index,
    };
    Ok((v, report))
}

/// Output of [`affine_construction`].
#[derive(Clone, Debug)]
pub struct AffineConstruction {
    pub group: Arc<PermGroup>,
    pub vector: ModVector<FiniteField>,
    pub primitive: bool,
    pub t: usize,
    pub d: usize,
}

/// The maps `x -> a x + b` (a in the group generated by `unit`) on GF(q)
/// together with `v = sum_x x s_x`, which spans a 2-dimensional submodule
/// with the all-ones vector.
pub fn affine_construction(field: &FiniteField, unit: FieldElement) -> Result<AffineConstruction> {
    if field.is_zero(&unit) {
        return Err(Error::InvalidArgument("multiplier must be nonzero".into()));
    }
    if field.is_one(&unit) && field.order() > 2 {
        return Err(Error::Precondition(
            "trivial multiplier group: the point stabilizer is trivial and q > 2".into(),
        ));
    }
    let group = Arc::new(affine(field, &unit)?);
    // Proper nonzero invariant subgroups exist iff GF(p)[a] is a proper subfield.
    let mut e = 1;
    let mut y = field.frobenius(unit);
    while y != unit {
        y = field.frobenius(y);
        e += 1;
    }
    let primitive = group.is_primitive()?;
    if primitive != (e == field.degree()) {
        return Err(Error::InvariantViolation(
            "primitivity disagrees with the invariant subgroup test".into(),
        ));
    }
    let coeffs = (0..field.order()).map(|i| field.element_at(i)).collect();
    let vector = ModVector::new(group.clone(), field.clone(), coeffs)?;
    let t = vector.t();
    let d = generated_submodule(&vector)?.dim();
    if d != 2 || t as u128 != field.order() - 1 {
        return Err(Error::InvariantViolation(format!(
            "affine vector has t = {t}, d = {d}"
        )));
    }
    Ok(AffineConstruction {
        group,
        vector,
        primitive,
        t,
        d,
    })
}

/// Default bound on `|F|^dim` for [`min_support`].
pub const MIN_SUPPORT_CAP: u128 = 1 << 24;

/// t(M): the least support of a nonzero combination of `rows`, by brute
/// force. Coefficient tuples run with the first coordinate fastest; the
/// witness is the first minimizer.
pub fn min_support(
    field: &FiniteField,
    rows: &[Vec<FieldElement>],
) -> Result<(usize, Vec<FieldElement>)> {
    min_support_capped(field, rows, MIN_SUPPORT_CAP)
}

pub fn min_support_capped(
    field: &FiniteField,
    rows: &[Vec<FieldElement>],
    cap: u128,
) -> Result<(usize, Vec<FieldElement>)> {
    let k = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    if k == 0 || n == 0 {
        return Err(Error::ZeroVector);
    }
    let q = field.order();
    let total = (0..k).try_fold(1u128, |acc, _| acc.checked_mul(q).filter(|&x| x <= cap));
    if total.is_none() {
        return Err(Error::CapExceeded(cap.min(usize::MAX as u128) as usize));
    }
    let mut digits = vec![0u128; k];
    let mut best: Option<(usize, Vec<FieldElement>)> = None;
    loop {
        // Advance the odometer, first coordinate fastest.
        let mut i = 0;
        loop {
            if i == k {
                return best.ok_or(Error::ZeroVector);
            }
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        let mut w = vec![field.zero(); n];
        for (d, row) in digits.iter().zip(rows) {
            if *d == 0 {
                continue;
            }
            let c = field.element_at(*d);
            for (wj, rj) in w.iter_mut().zip(row) {
                *wj = field.add(wj, &field.mul(&c, rj));
            }
        }
        let t = w.iter().filter(|x| !field.is_zero(x)).count();
        if t > 0 && best.as_ref().is_none_or(|(bt, _)| t < *bt) {
            best = Some((t, w));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RudioReport {
    pub primitive: bool,
    /// First translate (in element order) containing exactly one of u, w.
    pub separating: Option<Vec<usize>>,
    /// A translate containing u but not w.
    pub prescribed: Option<Vec<usize>>,
}

/// Searches the translates of `x` for one separating `u` from `w`, then
/// turns it into one containing `u` but not `w`: if Y contains w but not
/// u and u·g = w, then for the m with u·g^m in Y and u·g^(m+1) not in Y,
/// the translate Y·g^(-m) works.
pub fn rudio_witness(group: &PermGroup, x: &[usize], u: usize, w: usize) -> Result<RudioReport> {
    let n = group.degree();
    let mut xs = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    if xs.is_empty() || xs.len() >= n || xs.iter().any(|&p| p >= n) {
        return Err(Error::InvalidArgument(
            "X must be a nonempty proper subset".into(),
        ));
    }
    if u == w || u >= n || w >= n {
        return Err(Error::InvalidArgument(
            "u and w must be distinct points".into(),
        ));
    }
    let primitive = group.is_transitive() && group.is_primitive()?;
    let elems = group.elements()?;
    let separating = elems
        .iter()
        .map(|g| g.apply_set(&xs))
        .find(|y| y.binary_search(&u).is_ok() != y.binary_search(&w).is_ok());
    let prescribed = match &separating {
        None => None,
        Some(y) if y.binary_search(&u).is_ok() => Some(y.clone()),
        Some(y) => elems.iter().find(|g| g.image(u) == w).and_then(|g| {
            let mut m = 1;
            let mut p = w;
            let mut gm = g.clone();
            loop {
                let next = g.image(p);
                if y.binary_search(&next).is_err() {
                    return Some(gm.inverse().apply_set(y));
                }
                if next == u {
                    return None;
                }
                p = next;
                gm = gm.compose(g);
                m += 1;
                debug_assert!(m <= n);
            }
        }),
    };
    if primitive && (separating.is_none() || prescribed.is_none()) {
        return Err(Error::InvariantViolation(
            "no separating translate in a primitive group".into(),
        ));
    }
    Ok(RudioReport {
        primitive,
        separating,
        prescribed,
    })
}
