//! Permutation groups on `{0, .., n-1}` acting on the right.
//!
//! Groups are small enough to enumerate outright, so most questions are
//! answered either from the generators (orbits, blocks) or from the full
//! element list (stabilizers, orders).

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::ff::FiniteField;
use crate::field::Field;

/// Default bound on the number of elements enumerated.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// Element cap taken from `PERMOD_ELEMENT_CAP`, falling back to the default.
pub fn element_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("PERMOD_ELEMENT_CAP")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_ELEMENT_CAP)
    })
}

/// A bijection of `{0, .., n-1}`; `images[i]` is the image `i·g`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation, fixed points omitted; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{i}")?;
                first = false;
                i = self.image(i);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidArgument(format!(
                    "{images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    /// Product of the given cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut moved = vec![false; n];
        for c in cycles {
            for (k, &i) in c.iter().enumerate() {
                if i >= n || moved[i] {
                    return Err(Error::InvalidArgument(format!(
                        "cycles {cycles:?} are not disjoint cycles on {n} points"
                    )));
                }
                moved[i] = true;
                images[i] = c[(k + 1) % c.len()];
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` followed by `other`: `i·(self other) = (i·self)·other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Sorted image of a point set.
    pub fn apply_set(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&i| self.image(i)).collect();
        out.sort_unstable();
        out
    }
}

/// A partition of the points into blocks of equal size permuted by the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    /// Each block sorted; blocks ordered by least element.
    pub blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&x).is_ok())
    }
}

#[derive(Debug)]
pub struct PermGroup {
    n: usize,
    generators: Vec<Permutation>,
    elements: OnceLock<Vec<Permutation>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let elements = OnceLock::new();
        if let Some(e) = self.elements.get() {
            let _ = elements.set(e.clone());
        }
        PermGroup {
            n: self.n,
            generators: self.generators.clone(),
            elements,
        }
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.generators == other.generators
    }
}

impl PermGroup {
    /// Group generated by `generators` on `n >= 1` points. Identity
    /// generators are dropped.
    pub fn new(n: usize, generators: Vec<Permutation>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("degree must be positive".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != n) {
            return Err(Error::DimensionMismatch(format!(
                "generator {g} of degree {} in a group of degree {n}",
                g.degree()
            )));
        }
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_identity())
            .collect();
        Ok(PermGroup {
            n,
            generators,
            elements: OnceLock::new(),
        })
    }

    /// Subgroup given by its full element list, which is cached as is.
    pub fn from_elements(n: usize, elements: Vec<Permutation>) -> Result<Self> {
        let g = PermGroup::new(n, elements.clone())?;
        let id = Permutation::identity(n);
        let mut list = vec![id.clone()];
        list.extend(elements.into_iter().filter(|e| *e != id));
        let _ = g.elements.set(list);
        Ok(g)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All elements by breadth-first closure over the generators, identity
    /// first, in discovery order.
    pub fn elements(&self) -> Result<&[Permutation]> {
        self.elements_capped(element_cap())
    }

    pub fn elements_capped(&self, cap: usize) -> Result<&[Permutation]> {
        if let Some(e) = self.elements.get() {
            return if e.len() > cap {
                Err(Error::CapExceeded(cap))
            } else {
                Ok(e)
            };
        }
        let id = Permutation::identity(self.n);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut list = vec![id];
        let mut head = 0;
        while head < list.len() {
            let x = list[head].clone();
            head += 1;
            for g in &self.generators {
                let y = x.compose(g);
                if seen.insert(y.clone()) {
                    if list.len() == cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    list.push(y);
                }
            }
        }
        Ok(self.elements.get_or_init(|| list))
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }

    /// Orbit of `x`, sorted.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[x] = true;
        let mut queue = VecDeque::from([x]);
        while let Some(i) = queue.pop_front() {
            for g in &self.generators {
                let j = g.image(i);
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        (0..self.n).filter(|&i| seen[i]).collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.n
    }

    fn require_transitive(&self) -> Result<()> {
        if self.is_transitive() {
            Ok(())
        } else {
            Err(Error::Intransitive)
        }
    }

    /// Smallest block containing `a` and `b`, sorted.
    pub fn minimal_block(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        self.require_transitive()?;
        if a == b || a >= self.n || b >= self.n {
            return Err(Error::InvalidArgument(format!(
                "need two distinct points, got {a} and {b}"
            )));
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        let mut work = vec![(a, b)];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra.max(rb)] = ra.min(rb);
        while let Some((i, j)) = work.pop() {
            for g in &self.generators {
                let (x, y) = (g.image(i), g.image(j));
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx.max(ry)] = rx.min(ry);
                    work.push((x, y));
                }
            }
        }
        let root = find(&mut parent, a);
        Ok((0..self.n)
            .filter(|&i| find(&mut parent, i) == root)
            .collect())
    }

    pub fn is_primitive(&self) -> Result<bool> {
        self.require_transitive()?;
        for b in 1..self.n {
            if self.minimal_block(0, b)?.len() != self.n {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Translates of `delta`; fails unless they partition the points.
    pub fn block_system(&self, delta: &[usize]) -> Result<BlockSystem> {
        self.require_transitive()?;
        let mut base = delta.to_vec();
        base.sort_unstable();
        base.dedup();
        if base.is_empty() || base.last().is_some_and(|&x| x >= self.n) {
            return Err(Error::InvalidArgument(format!(
                "{delta:?} is not a point subset"
            )));
        }
        let mut owner: Vec<Option<usize>> = vec![None; self.n];
        let mut blocks = vec![base.clone()];
        for &x in &base {
            owner[x] = Some(0);
        }
        let mut head = 0;
        while head < blocks.len() {
            let cur = blocks[head].clone();
            head += 1;
            for g in &self.generators {
                let img = g.apply_set(&cur);
                match owner[img[0]] {
                    Some(k) if blocks[k] == img => {}
                    Some(_) => {
                        return Err(Error::Precondition(format!("{base:?} is not a block")));
                    }
                    None => {
                        if img.iter().any(|&x| owner[x].is_some()) {
                            return Err(Error::Precondition(format!("{base:?} is not a block")));
                        }
                        for &x in &img {
                            owner[x] = Some(blocks.len());
                        }
                        blocks.push(img);
                    }
                }
            }
        }
        blocks.sort();
        Ok(BlockSystem { blocks })
    }

    pub fn is_block(&self, delta: &[usize]) -> Result<bool> {
        match self.block_system(delta) {
            Ok(_) => Ok(true),
            Err(Error::Precondition(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Transitivity on ordered pairs of distinct points.
    pub fn is_doubly_transitive(&self) -> Result<bool> {
        self.require_transitive()?;
        if self.n < 2 {
            return Err(Error::Precondition(
                "double transitivity needs two points".into(),
            ));
        }
        let n = self.n;
        let mut seen = vec![false; n * n];
        seen[1] = true;
        let mut queue = VecDeque::from([(0usize, 1usize)]);
        let mut count = 1;
        while let Some((i, j)) = queue.pop_front() {
            for g in &self.generators {
                let (x, y) = (g.image(i), g.image(j));
                if !seen[x * n + y] {
                    seen[x * n + y] = true;
                    count += 1;
                    queue.push_back((x, y));
                }
            }
        }
        Ok(count == n * (n - 1))
    }

    /// Induced action on the unordered pairs, indexed by [`pair_index`].
    pub fn pairs_action(&self) -> Result<PermGroup> {
        let n = self.n;
        if n < 2 {
            return Err(Error::Precondition("pairs action needs two points".into()));
        }
        let m = n * (n - 1) / 2;
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let images = (0..m)
                    .map(|k| {
                        let (i, j) = pair_at(n, k);
                        pair_index(n, g.image(i), g.image(j))
                    })
                    .collect();
                Permutation::new(images)
            })
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(m, gens)
    }

    /// Induced action on a family of point sets that the group permutes.
    /// Sets are compared sorted; their order in `family` fixes the indexing.
    pub fn action_on_sets(&self, family: &[Vec<usize>]) -> Result<PermGroup> {
        let sorted: Vec<Vec<usize>> = family
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s.sort_unstable();
                s
            })
            .collect();
        let index: HashMap<&[usize], usize> = sorted
            .iter()
            .enumerate()
            .map(|(k, s)| (s.as_slice(), k))
            .collect();
        if index.len() != sorted.len() {
            return Err(Error::InvalidArgument("family has repeated sets".into()));
        }
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let images = sorted
                    .iter()
                    .map(|s| {
                        index
                            .get(g.apply_set(s).as_slice())
                            .copied()
                            .ok_or_else(|| {
                                Error::Precondition(
                                    "family is not invariant under the group".into(),
                                )
                            })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Permutation::new(images)
            })
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(sorted.len(), gens)
    }

    pub fn point_stabilizer(&self, x: usize) -> Result<Vec<Permutation>> {
        Ok(self
            .elements()?
            .iter()
            .filter(|g| g.image(x) == x)
            .cloned()
            .collect())
    }

    pub fn setwise_stabilizer(&self, set: &[usize]) -> Result<Vec<Permutation>> {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        Ok(self
            .elements()?
            .iter()
            .filter(|g| g.apply_set(&s) == s)
            .cloned()
            .collect())
    }
}

/// Lexicographic index of the pair `{i, j}` among the pairs of `n` points.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    debug_assert!(i != j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Inverse of [`pair_index`].
pub fn pair_at(n: usize, mut k: usize) -> (usize, usize) {
    let mut i = 0;
    while k >= n - i - 1 {
        k -= n - i - 1;
        i += 1;
    }
    (i, i + 1 + k)
}

fn cycle(n: usize, points: &[usize]) -> Permutation {
    Permutation::from_cycles(n, &[points]).expect("valid cycle")
}

/// Regular cyclic group generated by `i -> i + 1 mod n`.
pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let shift = Permutation::new((0..n).map(|i| (i + 1) % n).collect())?;
    PermGroup::new(n, vec![shift])
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    if n < 3 {
        return PermGroup::new(n, vec![cycle(n, &(0..n).collect::<Vec<_>>())]);
    }
    let all: Vec<usize> = (0..n).collect();
    PermGroup::new(n, vec![cycle(n, &all), cycle(n, &[0, 1])])
}

/// For odd n: the n-cycle and `(n-3 n-2 n-1)`; for even n: `(0 1 2)` and
/// the (n-1)-cycle on `1..n`.
pub fn alternating(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    if n < 3 {
        return PermGroup::new(n, vec![]);
    }
    let gens = if n % 2 == 1 {
        vec![
            cycle(n, &(0..n).collect::<Vec<_>>()),
            cycle(n, &[n - 3, n - 2, n - 1]),
        ]
    } else {
        vec![cycle(n, &(1..n).collect::<Vec<_>>()), cycle(n, &[0, 1, 2])]
    };
    PermGroup::new(n, gens)
}

/// Additive basis `1, X, .., X^(k-1)` of GF(p^k).
fn additive_basis(field: &FiniteField) -> Vec<<FiniteField as Field>::Elem> {
    let k = field.degree() as usize;
    (0..k)
        .map(|i| {
            let mut rep = vec![0u64; k];
            rep[i] = 1;
            field.from_rep(&rep).expect("basis vector")
        })
        .collect()
}

fn field_map(
    field: &FiniteField,
    f: impl Fn(<FiniteField as Field>::Elem) -> <FiniteField as Field>::Elem,
) -> Result<Vec<usize>> {
    let q = field.order() as usize;
    Ok((0..q)
        .map(|i| field.index_of(f(field.element_at(i as u128))) as usize)
        .collect())
}

/// PSL(2,q) (`special`) or PGL(2,q) on the projective line. Point `i < q`
/// is the field element with canonical index `i`; point `q` is infinity.
/// Generators: `x -> x + b` for each additive basis element b,
/// `x -> c x` with c a primitive element (its square for PSL, q odd), and
/// `x -> -1/x`.
pub fn projective_linear(field: &FiniteField, special: bool) -> Result<PermGroup> {
    let q = field.order();
    if q > 1 << 16 {
        return Err(Error::InvalidArgument(format!(
            "GF({q}) too large for a permutation group"
        )));
    }
    let q = q as usize;
    let inf = q;
    let mut gens = Vec::new();
    for b in additive_basis(field) {
        let mut images = field_map(field, |x| field.add(&x, &b))?;
        images.push(inf);
        gens.push(Permutation::new(images)?);
    }
    let omega = field.find_element_of_order((q - 1) as u128)?;
    let c = if special && field.p() != 2 {
        field.mul(&omega, &omega)
    } else {
        omega
    };
    let mut images = field_map(field, |x| field.mul(&c, &x))?;
    images.push(inf);
    gens.push(Permutation::new(images)?);

    let minus_one = field.from_int(-1);
    let mut images: Vec<usize> = (0..q)
        .map(|i| {
            let x = field.element_at(i as u128);
            match field.inv(&x) {
                None => inf,
                Some(xi) => field.index_of(field.mul(&minus_one, &xi)) as usize,
            }
        })
        .collect();
    images.push(field.index_of(field.zero()) as usize);
    gens.push(Permutation::new(images)?);
    PermGroup::new(q + 1, gens)
}

/// Affine maps `x -> a x + b` with `a` in the subgroup generated by `unit`.
pub fn affine(field: &FiniteField, unit: &<FiniteField as Field>::Elem) -> Result<PermGroup> {
    if field.is_zero(unit) {
        return Err(Error::InvalidArgument("multiplier must be a unit".into()));
    }
    let q = field.order();
    if q > 1 << 16 {
        return Err(Error::InvalidArgument(format!(
            "GF({q}) too large for a permutation group"
        )));
    }
    let mut gens = Vec::new();
    for b in additive_basis(field) {
        gens.push(Permutation::new(field_map(field, |x| field.add(&x, &b))?)?);
    }
    gens.push(Permutation::new(field_map(field, |x| {
        field.mul(unit, &x)
    })?)?);
    PermGroup::new(q as usize, gens)
}

/// Group file: the degree on the first line, then one generator per
/// nonempty line as space-separated images. `#` starts a comment.
pub fn parse_group(text: &str) -> Result<PermGroup> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("empty group file".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad degree: {e}")))?;
    let mut gens = Vec::new();
    for (k, line) in lines.enumerate() {
        let images = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("generator {}: {e}", k + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        if images.len() != n {
            return Err(Error::Parse(format!(
                "generator {} has {} images, expected {n}",
                k + 1,
                images.len()
            )));
        }
        gens.push(Permutation::new(images).map_err(|e| Error::Parse(e.to_string()))?);
    }
    PermGroup::new(n, gens)
}

pub fn render_group(g: &PermGroup) -> String {
    let mut out = format!("{}\n", g.degree());
    for gen in g.generators() {
        let line: Vec<String> = gen.images().iter().map(|i| i.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn load_group(path: &Path) -> Result<PermGroup> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_group(&text)
}
