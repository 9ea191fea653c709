//! Prime degree: the gcd criterion for `t + d <= p` on `GF(q)[Z_p]`,
//! counterexample search, nonvanishing of the minors of `[zeta^(ij)]` over
//! Q(zeta_p), and their failure modulo q.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{group_ring_vanishes_prime, CyclotomicField};
use crate::ff::{is_prime, make_field, prime_power, FieldElement, FiniteField};
use crate::field::{Field, Rationals};
use crate::linalg::{det_exact, null_space, rank, Matrix};
use crate::permgrp::{cyclic, PermGroup, Permutation};
use crate::permod::{generated_submodule, ModVector};
use crate::poly::{divisor_for_mask, multiplicity_check, split_cyclic, Poly};

fn poly_string<S: serde::Serializer, F: Field>(
    p: &Poly<F>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// The gcd criterion for `v = f(z)` in `F[Z_p]`:
/// `t(v) + d(v) <= p` exactly when `t(f) <= deg h`, `h = gcd(X^p - 1, f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcdCriterionReport {
    pub p: u64,
    #[serde(serialize_with = "poly_string")]
    pub f: Poly<FiniteField>,
    #[serde(serialize_with = "poly_string")]
    pub h: Poly<FiniteField>,
    pub t_f: usize,
    pub deg_h: usize,
    /// t(f) <= deg h.
    pub fails: bool,
    /// t(f) + (p - deg h), which equals t(v) + d(v).
    pub t_plus_d: usize,
}

impl GcdCriterionReport {
    /// d(v) = p - deg h.
    pub fn d(&self) -> usize {
        self.p as usize - self.deg_h
    }
}

pub fn gcd_criterion(f: &Poly<FiniteField>, p: u64) -> Result<GcdCriterionReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if deg as u64 >= p {
        return Err(Error::InvalidArgument(format!(
            "degree {deg} must be below p = {p}"
        )));
    }
    let field = f.field().clone();
    let h = if field.p() == p {
        // X^p - 1 = (X - 1)^p, so h = (X - 1)^mu.
        let mu = multiplicity_check(f, 1)?.multiplicity;
        Poly::from_ints(field.clone(), &[-1, 1]).pow(mu as u32)
    } else {
        Poly::x_pow_minus_one(field.clone(), p as usize).gcd(f)?
    };
    let t_f = f.term_count();
    let deg_h = h.degree().expect("gcd of nonzero polynomials");
    Ok(GcdCriterionReport {
        p,
        f: f.clone(),
        h,
        t_f,
        deg_h,
        fails: t_f <= deg_h,
        t_plus_d: t_f + (p as usize - deg_h),
    })
}

/// d(f(z)) computed directly as the dimension of the submodule of
/// `F[Z_p]` generated by the coefficient vector of `f`.
pub fn cyclic_dimension(f: &Poly<FiniteField>, p: u64) -> Result<usize> {
    let group = Arc::new(cyclic(p as usize)?);
    let mut c = f.coeffs().to_vec();
    if c.len() > p as usize {
        return Err(Error::InvalidArgument("degree must be below p".into()));
    }
    c.resize(p as usize, f.field().zero());
    Ok(generated_submodule(&ModVector::new(group, f.field().clone(), c)?)?.dim())
}

/// [`gcd_criterion`] with d(v) recomputed from the module and compared.
pub fn gcd_criterion_checked(f: &Poly<FiniteField>, p: u64) -> Result<GcdCriterionReport> {
    let r = gcd_criterion(f, p)?;
    let d = cyclic_dimension(f, p)?;
    if d != r.d() {
        return Err(Error::InvariantViolation(format!(
            "d(v) = {d} but p - deg h = {}",
            r.d()
        )));
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SearchMode {
    /// Irreducible factors of X^p - 1 only.
    #[serde(rename = "factors")]
    Factors,
    /// Proper divisors of X^p - 1 only.
    #[serde(rename = "divisors")]
    Divisors,
    /// Divisors first, then their multiples of degree < p.
    #[serde(rename = "multiples")]
    Multiples,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EntryKind {
    #[serde(rename = "missing-term-divisor")]
    MissingTermDivisor,
    #[serde(rename = "multiple")]
    Multiple,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub p: u64,
    pub q: u64,
    pub kind: EntryKind,
    /// The divisor h of X^p - 1.
    #[serde(serialize_with = "poly_string")]
    pub divisor: Poly<FiniteField>,
    /// f with t(f) <= deg h; equals h for divisor hits.
    #[serde(serialize_with = "poly_string")]
    pub witness: Poly<FiniteField>,
}

/// `GF(q)` for a prime power q.
pub fn field_of_order(q: u64) -> Result<FiniteField> {
    let (r, k) =
        prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
    make_field(r, k, None)
}

/// First f over `field` with `t(f) <= deg h` for a proper divisor h of
/// `X^p - 1`. Factors mode looks only at the irreducible factors, in their
/// sorted order. Otherwise divisors are scanned in bitmask order of the
/// sorted factor list. In multiples mode, each divisor h of degree D is then paired with
/// the supports T of size D containing 0, in lexicographic order: a
/// multiple of h supported on T exists exactly when the residues
/// `X^j mod h`, j in T, are dependent. The witness is made monic.
pub fn search_counterexample(
    p: u64,
    field: &FiniteField,
    mode: SearchMode,
) -> Result<Option<TableEntry>> {
    if field.p() == p {
        return Err(Error::Precondition(format!(
            "GF({}) has characteristic {p}",
            field.order()
        )));
    }
    let split = split_cyclic(p, field)?;
    let factors = &split.factors;
    let r = factors.len();
    let full = (1u64 << r) - 1;
    let q = field.order() as u64;
    let proper = || (1..full).map(|mask| divisor_for_mask(factors, mask));
    if mode == SearchMode::Factors {
        return Ok(factors
            .iter()
            .find(|h| h.term_count() <= h.degree().unwrap())
            .map(|h| TableEntry {
                p,
                q,
                kind: EntryKind::MissingTermDivisor,
                divisor: h.clone(),
                witness: h.clone(),
            }));
    }
    for h in proper() {
        if h.term_count() <= h.degree().unwrap() {
            return Ok(Some(TableEntry {
                p,
                q,
                kind: EntryKind::MissingTermDivisor,
                divisor: h.clone(),
                witness: h,
            }));
        }
    }
    if mode == SearchMode::Divisors {
        return Ok(None);
    }
    for h in proper() {
        if let Some(f) = sparse_multiple(&h, p as usize)? {
            return Ok(Some(TableEntry {
                p,
                q,
                kind: EntryKind::Multiple,
                divisor: h,
                witness: f,
            }));
        }
    }
    Ok(None)
}

/// A monic multiple of `h` of degree < n with at most `deg h` terms.
fn sparse_multiple(h: &Poly<FiniteField>, n: usize) -> Result<Option<Poly<FiniteField>>> {
    let field = h.field().clone();
    let dh = h.degree().ok_or(Error::ZeroPolynomial)?;
    if dh == 0 {
        return Ok(None);
    }
    let residues: Vec<Vec<FieldElement>> = (0..n)
        .map(|j| {
            let r = Poly::monomial(field.clone(), field.one(), j).rem(h)?;
            let mut c = r.coeffs().to_vec();
            c.resize(dh, field.zero());
            Ok(c)
        })
        .collect::<Result<_>>()?;
    let mut support: Vec<usize> = (0..dh).collect();
    loop {
        let m = Matrix::from_fn(field.clone(), dh, dh, |i, j| residues[support[j]][i]);
        if rank(&m) < dh {
            let c = &null_space(&m)[0];
            let mut coeffs = vec![field.zero(); n];
            for (k, &j) in support.iter().enumerate() {
                coeffs[j] = c[k];
            }
            let f = Poly::new(field.clone(), coeffs).monic();
            debug_assert!(h.divides(&f)?);
            return Ok(Some(f));
        }
        // Next subset of {1..n-1} of size dh-1 in lexicographic order.
        let mut i = dh - 1;
        loop {
            if i == 0 {
                return Ok(None);
            }
            if support[i] < n - dh + i {
                support[i] += 1;
                for k in i + 1..dh {
                    support[k] = support[k - 1] + 1;
                }
                break;
            }
            i -= 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub p: u64,
    /// Orders of the minimal fields, increasing.
    pub fields: Vec<u64>,
    pub entries: Vec<TableEntry>,
}

/// For each p, the prime powers q <= q_max (not powers of p) such that
/// GF(q) has a counterexample and no proper subfield does.
pub fn minimal_table(primes: &[u64], q_max: u64, mode: SearchMode) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut hits: HashMap<u64, bool> = HashMap::new();
        let mut entries = Vec::new();
        for q in 2..=q_max {
            let Some((r, k)) = prime_power(q) else {
                continue;
            };
            if r == p {
                continue;
            }
            let entry = search_counterexample(p, &make_field(r, k, None)?, mode)?;
            hits.insert(q, entry.is_some());
            let Some(entry) = entry else { continue };
            let subfield_hit = (1..k)
                .filter(|j| k % j == 0)
                .any(|j| hits.get(&r.pow(j)).copied().unwrap_or(false));
            if !subfield_hit {
                entries.push(entry);
            }
        }
        rows.push(TableRow {
            p,
            fields: entries.iter().map(|e| e.q).collect(),
            entries,
        });
    }
    Ok(rows)
}

/// Row and column indices of a minor.
pub type MinorIndex = (Vec<usize>, Vec<usize>);

/// Minors of `[zeta^(ij)]_{0 <= i, j < p}` checked by a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChebotarevReport {
    pub p: u64,
    pub max_size: usize,
    pub minors_checked: u64,
    /// Vanishing minors as (rows, columns); always expected empty.
    pub failures: Vec<MinorIndex>,
}

/// Largest p accepted by the minor sweep (i64 coefficients stay below p!).
pub const CHEBOTAREV_MAX_PRIME: u64 = 19;

/// `sum_{k=1..max} C(p, k)^2`.
pub fn minor_count(p: u64, max_size: usize) -> u64 {
    let mut c = 1u64;
    let mut total = 0;
    for k in 1..=max_size.min(p as usize) as u64 {
        c = c * (p - k + 1) / k;
        total += c * c;
    }
    total
}

struct MinorTables {
    p: usize,
    /// Rank of each mask among masks of equal popcount, in increasing order.
    rank: Vec<u32>,
    /// Masks of popcount k, increasing.
    by_size: Vec<Vec<u32>>,
}

impl MinorTables {
    fn new(p: usize) -> Self {
        let mut by_size = vec![Vec::new(); p + 1];
        let mut rank = vec![0u32; 1 << p];
        for mask in 0u32..1 << p {
            let k = mask.count_ones() as usize;
            rank[mask as usize] = by_size[k].len() as u32;
            by_size[k].push(mask);
        }
        MinorTables { p, rank, by_size }
    }
}

/// Visits every minor whose least row is `r0`, as an element of
/// `Z[X]/(X^p - 1)` (coefficient vector of length p), by expanding along
/// the last row: rows are added in increasing order, and the table for
/// rows R holds the minors (R, C) for all column sets C of size |R|.
fn sweep_rows_from(
    t: &MinorTables,
    r0: usize,
    max_size: usize,
    visit: &mut impl FnMut(u32, u32, &[i64]),
) {
    let p = t.p;
    // First level: single entries zeta^(r0 c).
    let level1: Vec<i64> = {
        let mut v = vec![0i64; t.by_size[1].len() * p];
        for (idx, &cm) in t.by_size[1].iter().enumerate() {
            let c = cm.trailing_zeros() as usize;
            v[idx * p + (r0 * c) % p] = 1;
        }
        v
    };
    fn rec(
        t: &MinorTables,
        rows: u32,
        last: usize,
        table: &[i64],
        max_size: usize,
        visit: &mut impl FnMut(u32, u32, &[i64]),
    ) {
        let p = t.p;
        let k = rows.count_ones() as usize;
        for (idx, &cm) in t.by_size[k].iter().enumerate() {
            visit(rows, cm, &table[idx * p..(idx + 1) * p]);
        }
        if k == max_size {
            return;
        }
        let next = &t.by_size[k + 1];
        let mut out = vec![0i64; next.len() * p];
        for r in last + 1..p {
            out.iter_mut().for_each(|x| *x = 0);
            for (idx, &cm) in next.iter().enumerate() {
                let dst = &mut out[idx * p..(idx + 1) * p];
                let mut rest = cm;
                let mut j = 0usize;
                while rest != 0 {
                    let c = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    // Cofactor sign for entry (k+1, j+1), 1-based.
                    let neg = (k + j) % 2 == 1;
                    let sub = cm & !(1 << c);
                    let src_idx = t.rank[sub as usize] as usize;
                    let src = &table[src_idx * p..(src_idx + 1) * p];
                    let shift = (r * c) % p;
                    for (e, &val) in src.iter().enumerate() {
                        if val != 0 {
                            let d = &mut dst[(e + shift) % p];
                            if neg {
                                *d -= val;
                            } else {
                                *d += val;
                            }
                        }
                    }
                    j += 1;
                }
            }
            rec(t, rows | 1 << r, r, &out, max_size, visit);
        }
    }
    rec(t, 1 << r0, r0, &level1, max_size, visit);
}

fn mask_points(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

/// Checks that every square submatrix of `[zeta^(ij)]` of size up to
/// `max_size` is nonzero in Q(zeta_p), in exact integer arithmetic.
/// `jobs` bounds the worker threads; output does not depend on it.
pub fn chebotarev_verify(p: u64, max_size: Option<usize>, jobs: usize) -> Result<ChebotarevReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > CHEBOTAREV_MAX_PRIME {
        return Err(Error::InvalidArgument(format!(
            "p = {p} exceeds the supported bound {CHEBOTAREV_MAX_PRIME}"
        )));
    }
    let pu = p as usize;
    let max_size = max_size.unwrap_or(pu).clamp(1, pu);
    let tables = MinorTables::new(pu);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let parts: Vec<(u64, Vec<MinorIndex>)> = pool.install(|| {
        (0..pu)
            .into_par_iter()
            .map(|r0| {
                let mut count = 0u64;
                let mut bad = Vec::new();
                sweep_rows_from(&tables, r0, max_size, &mut |rows, cols, v| {
                    count += 1;
                    if group_ring_vanishes_prime(v) {
                        bad.push((mask_points(rows), mask_points(cols)));
                    }
                });
                (count, bad)
            })
            .collect()
    });
    let minors_checked = parts.iter().map(|(c, _)| c).sum();
    let mut failures: Vec<_> = parts.into_iter().flat_map(|(_, b)| b).collect();
    failures.sort();
    let expected = minor_count(p, max_size);
    if minors_checked != expected {
        return Err(Error::InvariantViolation(format!(
            "checked {minors_checked} minors, expected {expected}"
        )));
    }
    Ok(ChebotarevReport {
        p,
        max_size,
        minors_checked,
        failures,
    })
}

/// All minors with their group-ring values, keyed by (row mask, column
/// mask). Exposed for cross-checking against generic elimination.
pub fn chebotarev_minors(p: u64, max_size: usize) -> HashMap<(u32, u32), Vec<i64>> {
    let tables = MinorTables::new(p as usize);
    let mut out = HashMap::new();
    for r0 in 0..p as usize {
        sweep_rows_from(&tables, r0, max_size, &mut |r, c, v| {
            out.insert((r, c), v.to_vec());
        });
    }
    out
}

/// Determinant of a minor of `[zeta^(ij)]` by elimination over Q(zeta_p).
pub fn chebotarev_minor_exact(
    k: &CyclotomicField,
    rows: &[usize],
    cols: &[usize],
) -> Result<crate::exact::Cyclotomic> {
    let m = Matrix::from_fn(k.clone(), rows.len(), cols.len(), |i, j| {
        k.cyclo_from_power((rows[i] * cols[j]) as i64)
    });
    det_exact(&m)
}

/// A vanishing minor of `[zeta^(xy)]` over GF(q^m) built from a
/// counterexample f: rows are the exponents of f, columns the first t(f)
/// exponents y with f(zeta^y) = 0.
#[derive(Clone, Debug, Serialize)]
pub struct RefutationReport {
    pub p: u64,
    pub q: u64,
    /// Order of the extension holding zeta.
    pub extension_order: String,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// Entries of the submatrix, rendered in the extension field.
    pub matrix: Vec<Vec<String>>,
    pub determinant_is_zero: bool,
    #[serde(skip)]
    pub extension: Option<FiniteField>,
    #[serde(skip)]
    pub zeta: Option<FieldElement>,
}

pub fn chebotarev_refute_mod_q(p: u64, f: &Poly<FiniteField>) -> Result<RefutationReport> {
    let crit = gcd_criterion(f, p)?;
    if !crit.fails {
        return Err(Error::Precondition(format!(
            "t(f) = {} > deg h = {}: no vanishing minor is implied",
            crit.t_f, crit.deg_h
        )));
    }
    let field = f.field();
    let split = split_cyclic(p, field)?;
    let ext = split.extension.clone();
    let emb = field.embed_into(&ext)?;
    let lifted = Poly::new(
        ext.clone(),
        f.coeffs().iter().map(|c| emb.map(*c)).collect(),
    );
    let rows = f.support();
    let cols: Vec<usize> = (0..p as usize)
        .filter(|&y| ext.is_zero(&lifted.eval(&ext.pow(&split.zeta, y as u128))))
        .take(rows.len())
        .collect();
    if cols.len() < rows.len() {
        return Err(Error::InvariantViolation(format!(
            "only {} roots of f among the powers of zeta",
            cols.len()
        )));
    }
    let m = Matrix::from_fn(ext.clone(), rows.len(), cols.len(), |i, j| {
        ext.pow(&split.zeta, (rows[i] * cols[j]) as u128)
    });
    let det = det_exact(&m)?;
    let matrix = (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| ext.render(x)).collect())
        .collect();
    if !ext.is_zero(&det) {
        return Err(Error::InvariantViolation(
            "minor built from a counterexample does not vanish".into(),
        ));
    }
    Ok(RefutationReport {
        p,
        q: field.order() as u64,
        extension_order: ext.order().to_string(),
        rows,
        cols,
        matrix,
        determinant_is_zero: true,
        extension: Some(ext),
        zeta: Some(split.zeta),
    })
}

/// Number of characters of the cyclic group with nonzero value on `v`,
/// computed exactly in Q(zeta_n). Points are labelled by powers of the
/// generator z with `0·z = 1`: point `0·z^k` is k.
pub fn fourier_support(v: &ModVector<Rationals>) -> Result<usize> {
    let n = v.n();
    let labels = cyclic_labels(v.group())?;
    let k = CyclotomicField::new(n as u32)?;
    let mut c = vec![Rationals.zero(); n];
    for (point, &label) in labels.iter().enumerate() {
        c[label] = v.coeffs()[point].clone();
    }
    let mut count = 0;
    for j in 0..n {
        let mut tw = vec![Rationals.zero(); n];
        for (i, ci) in c.iter().enumerate() {
            tw[(i * j) % n] += ci;
        }
        if !k.from_group_ring(&tw).is_zero() {
            count += 1;
        }
    }
    Ok(count)
}

/// `labels[x] = k` with `x = 0·z^k` for the generator z of a regular cyclic
/// group sending 0 to 1.
fn cyclic_labels(group: &PermGroup) -> Result<Vec<usize>> {
    let n = group.degree();
    let not_cyclic = || Error::Precondition("group is not regular cyclic".into());
    if n == 1 {
        return Ok(vec![0]);
    }
    let elems = group.elements()?;
    if elems.len() != n || !group.is_transitive() {
        return Err(not_cyclic());
    }
    let z: &Permutation = elems
        .iter()
        .find(|g| g.image(0) == 1)
        .ok_or_else(not_cyclic)?;
    let mut labels = vec![usize::MAX; n];
    let mut x = 0;
    for k in 0..n {
        if labels[x] != usize::MAX {
            return Err(not_cyclic());
        }
        labels[x] = k;
        x = z.image(x);
    }
    // Regular of order n with an element of order n: cyclic.
    Ok(labels)
}

/// Vectors checked, least margin and failures for one slice of a sweep.
type SweepChunk = (u64, i64, Vec<Vec<u64>>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustiveReport {
    pub p: u64,
    pub vectors_checked: u64,
    /// Least t + d - p seen; positive when the bound holds.
    pub min_margin: i64,
    /// Coefficient lists (ascending) with t + d <= p; always expected empty.
    pub failures: Vec<Vec<u64>>,
}

/// Every nonzero `v` in `GF(p)[Z_p]` satisfies `t + d > p`; checked over
/// all `p^p - 1` vectors with d = p - mu, mu the multiplicity of the
/// root 1.
pub fn prime_char_exhaustive(p: u64, jobs: usize) -> Result<ExhaustiveReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > 11 {
        return Err(Error::InvalidArgument(format!(
            "p^p vectors is too many for p = {p}"
        )));
    }
    let field = make_field(p, 1, None)?;
    let total = p.pow(p as u32);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let chunk = p.pow((p as u32).saturating_sub(2)).max(1);
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    let parts: Vec<Result<SweepChunk>> = pool.install(|| {
        starts
            .par_iter()
            .map(|&s| {
                let mut count = 0;
                let mut margin = i64::MAX;
                let mut bad = Vec::new();
                for idx in s.max(1)..(s + chunk).min(total) {
                    let digits: Vec<u64> = (0..p).map(|i| idx / p.pow(i as u32) % p).collect();
                    let f = Poly::new(
                        field.clone(),
                        digits.iter().map(|&d| field.from_int(d as i64)).collect(),
                    );
                    let r = match gcd_criterion(&f, p) {
                        Ok(r) => r,
                        Err(Error::InvariantViolation(_)) => {
                            bad.push(digits);
                            count += 1;
                            continue;
                        }
                        Err(e) => return Err(e),
                    };
                    count += 1;
                    margin = margin.min(r.t_plus_d as i64 - p as i64);
                    if r.fails {
                        bad.push(digits);
                    }
                }
                Ok((count, margin, bad))
            })
            .collect()
    });
    let mut vectors_checked = 0;
    let mut min_margin = i64::MAX;
    let mut failures = Vec::new();
    for part in parts {
        let (c, m, b) = part?;
        vectors_checked += c;
        min_margin = min_margin.min(m);
        failures.extend(b);
    }
    failures.sort();
    Ok(ExhaustiveReport {
        p,
        vectors_checked,
        min_margin,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> FiniteField {
        field_of_order(q).unwrap()
    }

    #[test]
    fn criterion_examples() {
        let f5 = gf(5);
        let f = Poly::from_ints(f5.clone(), &[2, 2, 4, 3, 0, 0, 1]);
        let r = gcd_criterion_checked(&f, 11).unwrap();
        assert_eq!(r.h.to_string(), "X^5 + 2X^4 + 4X^3 + X^2 + X + 4");
        assert_eq!((r.t_f, r.deg_h, r.fails), (5, 5, true));
        assert_eq!(r.t_plus_d, 11);

        let f = Poly::from_ints(gf(2), &[1, 1, 0, 1]);
        let r = gcd_criterion_checked(&f, 7).unwrap();
        assert_eq!(r.h, f);
        assert!(r.fails);

        let r = gcd_criterion_checked(&Poly::from_ints(gf(3), &[1, 1]), 5).unwrap();
        assert_eq!(r.deg_h, 0);
        assert!(!r.fails);

        assert!(gcd_criterion(&Poly::zero(gf(3)), 5).is_err());
        assert!(gcd_criterion(&Poly::from_ints(gf(3), &[0, 0, 0, 0, 0, 1]), 5).is_err());
    }

    #[test]
    fn criterion_in_characteristic_p() {
        let f = Poly::from_ints(gf(5), &[4, 1]);
        let r = gcd_criterion_checked(&f, 5).unwrap();
        assert_eq!(r.deg_h, 1);
        assert!(!r.fails);
    }

    #[test]
    fn search_examples() {
        let e = search_counterexample(7, &gf(2), SearchMode::Factors)
            .unwrap()
            .unwrap();
        assert_eq!(e.witness.to_string(), "X^3 + X + 1");
        let e = search_counterexample(7, &gf(2), SearchMode::Divisors)
            .unwrap()
            .unwrap();
        assert_eq!(e.witness.to_string(), "X^3 + X + 1");
        assert_eq!(
            search_counterexample(11, &gf(5), SearchMode::Factors).unwrap(),
            None
        );
        // No irreducible factor over GF(5) lacks a term, but (X - 1) times a
        // quintic factor does.
        let e = search_counterexample(11, &gf(5), SearchMode::Divisors)
            .unwrap()
            .unwrap();
        assert_eq!(e.witness.to_string(), "X^6 + X^5 + 2X^4 + 2X^3 + 3X + 1");
        let r = gcd_criterion_checked(&e.witness, 11).unwrap();
        assert!(r.fails);
        assert_eq!(r.t_plus_d, 11);
        assert_eq!(cyclic_dimension(&e.witness, 11).unwrap(), 5);
        let e = search_counterexample(11, &gf(5), SearchMode::Multiples)
            .unwrap()
            .unwrap();
        let r = gcd_criterion_checked(&e.witness, 11).unwrap();
        assert!(r.fails);
        // Multiples of a quintic factor alone, as in the (X - 2)h example.
        let split = split_cyclic(11, &gf(5)).unwrap();
        let h = &split.factors[1];
        assert_eq!(h.degree(), Some(5));
        let f = sparse_multiple(h, 11).unwrap().unwrap();
        assert!(h.divides(&f).unwrap());
        assert!(f.term_count() <= 5 && f.degree().unwrap() < 11);
        assert!(gcd_criterion_checked(&f, 11).unwrap().fails);
        assert!(search_counterexample(5, &gf(25), SearchMode::Divisors).is_err());
    }

    /// Reference scan over every multiplier g with deg g < p - deg h.
    fn naive_multiple_exists(p: u64, field: &FiniteField) -> bool {
        let split = split_cyclic(p, field).unwrap();
        let r = split.factors.len();
        let q = field.order();
        (1..(1u64 << r) - 1).any(|mask| {
            let h = divisor_for_mask(&split.factors, mask);
            let dh = h.degree().unwrap();
            let len = p as usize - dh;
            let total = q.pow(len as u32);
            (1..total).any(|idx| {
                let g: Vec<FieldElement> = (0..len)
                    .map(|i| field.element_at(idx / q.pow(i as u32) % q))
                    .collect();
                let f = h.mul(&Poly::new(field.clone(), g));
                f.term_count() <= dh
            })
        })
    }

    #[test]
    fn support_search_agrees_with_multiplier_scan() {
        for (p, q) in [
            (5u64, 2u64),
            (5, 3),
            (7, 2),
            (7, 3),
            (5, 4),
            (11, 3),
            (7, 5),
        ] {
            let field = gf(q);
            let fast = search_counterexample(p, &field, SearchMode::Multiples)
                .unwrap()
                .is_some();
            assert_eq!(fast, naive_multiple_exists(p, &field), "p={p} q={q}");
        }
    }

    #[test]
    fn small_tables() {
        let rows = minimal_table(&[7, 13], 8, SearchMode::Factors).unwrap();
        assert_eq!(rows[0].fields, vec![2]);
        assert_eq!(rows[1].fields, vec![3, 4, 5]);
        let rows = minimal_table(&[13], 8, SearchMode::Divisors).unwrap();
        assert_eq!(rows[0].fields, vec![3, 4, 5, 8]);
    }

    #[test]
    fn minor_counts() {
        assert_eq!(minor_count(2, 2), 5);
        assert_eq!(minor_count(3, 3), 19);
        assert_eq!(minor_count(7, 7), 3431);
        assert_eq!(minor_count(11, 11), 705_431);
    }

    #[test]
    fn chebotarev_small_primes() {
        for (p, n) in [(2u64, 5u64), (3, 19), (5, 251), (7, 3431)] {
            let r = chebotarev_verify(p, None, 2).unwrap();
            assert_eq!(r.minors_checked, n);
            assert!(r.failures.is_empty());
        }
        assert_eq!(
            chebotarev_verify(7, Some(2), 1).unwrap().minors_checked,
            49 + 441
        );
    }

    #[test]
    fn minor_values_match_elimination() {
        for p in [2u64, 3, 5] {
            let k = CyclotomicField::new(p as u32).unwrap();
            let minors = chebotarev_minors(p, p as usize);
            assert_eq!(minors.len() as u64, minor_count(p, p as usize));
            for ((rm, cm), v) in &minors {
                let det = chebotarev_minor_exact(&k, &mask_points(*rm), &mask_points(*cm)).unwrap();
                let q: Vec<_> = v.iter().map(|&x| Rationals.from_int(x)).collect();
                assert_eq!(k.from_group_ring(&q), det);
            }
        }
    }

    #[test]
    fn refutation_over_gf8() {
        let f = Poly::from_ints(gf(2), &[1, 1, 0, 1]);
        let r = chebotarev_refute_mod_q(7, &f).unwrap();
        assert_eq!(r.rows, vec![0, 1, 3]);
        assert_eq!(r.cols.len(), 3);
        assert!(r.determinant_is_zero);
        let not_failing = Poly::from_ints(gf(3), &[1, 1]);
        assert!(chebotarev_refute_mod_q(5, &not_failing).is_err());
    }

    #[test]
    fn fourier_examples() {
        let v = |n: usize, c: &[i64]| {
            ModVector::from_ints(Arc::new(cyclic(n).unwrap()), Rationals, c).unwrap()
        };
        assert_eq!(fourier_support(&v(4, &[1, 1, 1, 1])).unwrap(), 1);
        assert_eq!(fourier_support(&v(3, &[1, 0, 0])).unwrap(), 3);
        let w = v(6, &[1, 0, 0, 1, 0, 0]);
        assert_eq!(fourier_support(&w).unwrap(), 3);
        assert_eq!(generated_submodule(&w).unwrap().dim(), 3);
        let s3 = Arc::new(crate::permgrp::symmetric(3).unwrap());
        let bad = ModVector::from_ints(s3, Rationals, &[1, 0, 0]).unwrap();
        assert!(fourier_support(&bad).is_err());
    }

    #[test]
    fn exhaustive_small() {
        for (p, n) in [(2u64, 3u64), (3, 26), (5, 3124)] {
            let r = prime_char_exhaustive(p, 2).unwrap();
            assert_eq!(r.vectors_checked, n);
            assert!(r.failures.is_empty());
            assert!(r.min_margin > 0);
        }
    }
}
