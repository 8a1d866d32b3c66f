//! Permutations, permutation groups, and the brute-force machinery around
//! them: closure, the `Aut(R)` oracle, Reynolds projection onto a commutant,
//! and the orbit-pair partition behind the identifiability dichotomy.
//!
//! Conventions: a permutation is its image array, `σ(i) = images[i]`. Its
//! matrix carries a 1 at `(i, σ(i))`. Products compose left to right
//! (`σ·π` applies `σ` first, then `π`), which makes
//! `perm_matrix(σ·π) = perm_matrix(σ) * perm_matrix(π)`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianMatrix, ONE, ZERO};

/// Largest degree for which `S_M` is scanned exhaustively.
pub const MAX_BRUTE_FORCE_DEGREE: usize = 8;

/// Default element cap for [`closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 10080;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Self(images))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// The `n`-cycle `i -> i + 1 mod n`.
    pub fn cycle(n: usize) -> Self {
        Self((0..n).map(|i| (i + 1) % n).collect())
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                let b = cyc[(k + 1) % cyc.len()];
                if a >= n || b >= n || touched[a] {
                    return Err(Error::NotAPermutation(format!("cycles {cycles:?}")));
                }
                touched[a] = true;
                images[a] = b;
            }
        }
        Self::new(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self · other`: apply `self`, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Self(inv)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::identity(self.degree());
        for _ in 0..k {
            out = out.then(self);
        }
        out
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, &x)| *i == x).count()
    }

    /// Disjoint cycles of length > 1, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.0[x];
            }
            out.push(cyc);
        }
        out
    }

    /// Cycle notation with zero-based points, e.g. `(0 1 2)(3 4)`; `()` for
    /// the identity.
    pub fn cycle_notation(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("({})", inner.join(" "))
            })
            .collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_notation())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// 0/1 matrix with a 1 at `(i, σ(i))`.
pub fn perm_matrix(sigma: &Permutation) -> ComplexMatrix {
    let n = sigma.degree();
    let mut m = ComplexMatrix::zeros(n, n);
    for (i, &x) in sigma.images().iter().enumerate() {
        m[(i, x)] = ONE;
    }
    m
}

/// `P_σ X`, computed as a row permutation.
pub fn permute_rows(sigma: &Permutation, x: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(x.rows(), x.cols(), |i, j| x[(sigma.apply(i), j)])
}

/// `X P_σ`, computed as a column permutation.
pub fn permute_cols(sigma: &Permutation, x: &ComplexMatrix) -> ComplexMatrix {
    let inv = sigma.inverse();
    ComplexMatrix::from_fn(x.rows(), x.cols(), |i, j| x[(i, inv.apply(j))])
}

/// `||P_σ X - X P_σ||_F` without forming either product.
pub fn perm_commutator_norm(sigma: &Permutation, x: &ComplexMatrix) -> f64 {
    let n = x.rows();
    let inv = sigma.inverse();
    let mut s = 0.0;
    for i in 0..n {
        let si = sigma.apply(i);
        for j in 0..n {
            s += (x[(si, j)] - x[(i, inv.apply(j))]).norm_sqr();
        }
    }
    s.sqrt()
}

/// Lexicographic successor in place; false once the last permutation is passed.
pub(crate) fn next_lex(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Calls `f` on every permutation of degree `n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&Permutation)) {
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        f(&Permutation(cur.clone()));
        if !next_lex(&mut cur) {
            break;
        }
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// A finite permutation group stored by its full element list.
#[derive(Clone)]
pub struct PermutationGroup {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashSet<Permutation>,
    generators: Vec<Permutation>,
}

impl fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermutationGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for PermutationGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.index == other.index
    }
}

impl PermutationGroup {
    pub fn trivial(degree: usize) -> Self {
        Self::from_elements(degree, vec![Permutation::identity(degree)], Vec::new())
    }

    /// Full symmetric group; limited to brute-force degrees.
    pub fn symmetric(degree: usize) -> Result<Self> {
        check_degree(degree)?;
        let mut elements = Vec::with_capacity(factorial(degree));
        for_each_permutation(degree, |p| elements.push(p.clone()));
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::cycle(degree));
            gens.push(Permutation::from_cycles(degree, &[&[0, 1]])?);
        }
        Ok(Self::from_elements(degree, elements, gens))
    }

    fn from_elements(degree: usize, mut elements: Vec<Permutation>, generators: Vec<Permutation>) -> Self {
        elements.sort();
        let index = elements.iter().cloned().collect();
        Self {
            degree,
            elements,
            index,
            generators,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in lexicographic order of their image arrays.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains(p)
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements.iter().all(|e| other.contains(e))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Exhaustive closure check under products and inverses.
    pub fn is_closed(&self) -> bool {
        if !self.contains(&Permutation::identity(self.degree)) {
            return false;
        }
        self.elements
            .iter()
            .all(|a| self.contains(&a.inverse()) && self.elements.iter().all(|b| self.contains(&a.then(b))))
    }
}

fn check_degree(degree: usize) -> Result<()> {
    if degree > MAX_BRUTE_FORCE_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree,
            max: MAX_BRUTE_FORCE_DEGREE,
        });
    }
    Ok(())
}

/// Smallest subgroup containing `gens`, by breadth-first product closure.
pub fn closure(degree: usize, gens: &[Permutation], cap: usize) -> Result<PermutationGroup> {
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
    }
    let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in &gens {
            let y = x.then(s);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::ClosureCapExceeded { cap });
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(PermutationGroup::from_elements(degree, elements, gens))
}

/// `⟨group, extra⟩`, reusing the group's generators.
pub fn extend(group: &PermutationGroup, extra: &Permutation, cap: usize) -> Result<PermutationGroup> {
    let mut gens = group.generators().to_vec();
    gens.push(extra.clone());
    closure(group.degree(), &gens, cap)
}

/// Exhaustive `Aut(R) = {σ : ||P_σ R - R P_σ||_F <= tol ||R||_F}`.
pub fn aut_bruteforce(r: &HermitianMatrix, tol: f64) -> Result<PermutationGroup> {
    let n = r.dim();
    check_degree(n)?;
    let bound = tol * r.frobenius_norm();
    let mut elements = Vec::new();
    for_each_permutation(n, |p| {
        if perm_commutator_norm(p, r) <= bound {
            elements.push(p.clone());
        }
    });
    let gens = minimal_generators(n, &elements);
    let group = PermutationGroup::from_elements(n, elements, gens);
    debug_assert!(n > 6 || group.is_closed());
    Ok(group)
}

/// Greedy generating set drawn from `elements` in order.
fn minimal_generators(degree: usize, elements: &[Permutation]) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current = PermutationGroup::trivial(degree);
    for e in elements {
        if current.order() == elements.len() {
            break;
        }
        if !current.contains(e) {
            gens.push(e.clone());
            current = match closure(degree, &gens, usize::MAX) {
                Ok(g) => g,
                Err(_) => unreachable!("uncapped closure"),
            };
        }
    }
    gens
}

fn check_group_dim(g: &PermutationGroup, x: &ComplexMatrix) -> Result<()> {
    if !x.is_square() {
        return Err(Error::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    if x.rows() != g.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: x.rows(),
        });
    }
    Ok(())
}

/// Reynolds projection `(1/|G|) Σ_g P_g X P_g^T` onto the commutant of `G`.
pub fn reynolds_project(g: &PermutationGroup, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_group_dim(g, x)?;
    let n = x.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for p in g.elements() {
        for i in 0..n {
            let pi = p.apply(i);
            for j in 0..n {
                out[(i, j)] += x[(pi, p.apply(j))];
            }
        }
    }
    Ok(out.scale_real(1.0 / g.order() as f64))
}

/// True iff `x` commutes with every generator within
/// `tol * max(1, ||x||_F)`.
pub fn in_commutant(g: &PermutationGroup, x: &ComplexMatrix, tol: f64) -> bool {
    if check_group_dim(g, x).is_err() {
        return false;
    }
    let bound = tol * x.frobenius_norm().max(1.0);
    let gens: Vec<Permutation> = if g.generators().is_empty() && !g.is_trivial() {
        g.elements().to_vec()
    } else {
        g.generators().to_vec()
    };
    gens.iter().all(|p| perm_commutator_norm(p, x) <= bound)
}

/// Which orbit structure to use for the identifiability comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairMode {
    /// Ordered pairs as they are.
    Raw,
    /// Blocks of `(i, j)` and `(j, i)` merged; matches real symmetric data.
    TransposeMerged,
}

/// Partition of the `M^2` ordered index pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPairPartition {
    degree: usize,
    block_id: Vec<usize>,
    blocks: usize,
}

impl OrbitPairPartition {
    fn from_union_find(degree: usize, mut uf: UnionFind) -> Self {
        let mut relabel = HashMap::new();
        let mut block_id = Vec::with_capacity(degree * degree);
        for k in 0..degree * degree {
            let root = uf.find(k);
            let next = relabel.len();
            block_id.push(*relabel.entry(root).or_insert(next));
        }
        Self {
            degree,
            blocks: relabel.len(),
            block_id,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    /// Block of the ordered pair `(i, j)`; blocks are numbered by first
    /// occurrence in row-major order.
    pub fn block(&self, i: usize, j: usize) -> usize {
        self.block_id[i * self.degree + j]
    }

    pub fn block_ids(&self) -> &[usize] {
        &self.block_id
    }

    /// Coarsening that also joins `(i, j)` with `(j, i)`.
    pub fn merged_with_transpose(&self) -> Self {
        let n = self.degree;
        let mut uf = UnionFind::new(n * n);
        for k in 0..n * n {
            let (i, j) = (k / n, k % n);
            uf.union(k, j * n + i);
        }
        let mut first = HashMap::new();
        for (k, &b) in self.block_id.iter().enumerate() {
            match first.get(&b) {
                Some(&f) => uf.union(f, k),
                None => {
                    first.insert(b, k);
                }
            }
        }
        Self::from_union_find(n, uf)
    }

    /// Whether `σ` maps every block into itself under the diagonal action.
    pub fn preserved_by(&self, sigma: &Permutation) -> bool {
        let n = self.degree;
        (0..n).all(|i| {
            let si = sigma.apply(i);
            (0..n).all(|j| self.block(i, j) == self.block(si, sigma.apply(j)))
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Orbits of the diagonal action `g·(i, j) = (g(i), g(j))`.
pub fn orbit_pairs(g: &PermutationGroup) -> OrbitPairPartition {
    let n = g.degree();
    let mut uf = UnionFind::new(n * n);
    let gens: &[Permutation] = if g.generators().is_empty() {
        g.elements()
    } else {
        g.generators()
    };
    for p in gens {
        for i in 0..n {
            for j in 0..n {
                uf.union(i * n + j, p.apply(i) * n + p.apply(j));
            }
        }
    }
    OrbitPairPartition::from_union_find(n, uf)
}

/// Every `σ ∈ S_M` preserving each block of `p`; always a group.
pub fn max_orbit_preserving_group(p: &OrbitPairPartition) -> Result<PermutationGroup> {
    let n = p.degree();
    check_degree(n)?;
    let mut elements = Vec::new();
    for_each_permutation(n, |s| {
        if p.preserved_by(s) {
            elements.push(s.clone());
        }
    });
    let gens = minimal_generators(n, &elements);
    Ok(PermutationGroup::from_elements(n, elements, gens))
}

/// Outcome of the generative identifiability test.
#[derive(Clone, Debug, PartialEq)]
pub enum Identifiability {
    Identifiable,
    /// The largest group sharing the commutant; strictly contains `G*`.
    Ambiguous(PermutationGroup),
}

pub fn classify_identifiability(gstar: &PermutationGroup, mode: PairMode) -> Result<Identifiability> {
    check_degree(gstar.degree())?;
    let raw = orbit_pairs(gstar);
    let partition = match mode {
        PairMode::Raw => raw,
        PairMode::TransposeMerged => raw.merged_with_transpose(),
    };
    let hmax = max_orbit_preserving_group(&partition)?;
    if hmax.order() == gstar.order() {
        Ok(Identifiability::Identifiable)
    } else {
        Ok(Identifiability::Ambiguous(hmax))
    }
}

/// Orbit-indicator basis of the commutant: one 0/1 matrix per block.
pub fn commutant_basis(p: &OrbitPairPartition) -> Vec<ComplexMatrix> {
    let n = p.degree();
    (0..p.num_blocks())
        .map(|b| ComplexMatrix::from_fn(n, n, |i, j| if p.block(i, j) == b { ONE } else { ZERO }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::C64;

    fn tau6() -> Permutation {
        Permutation::cycle(6)
    }

    fn rho6() -> Permutation {
        Permutation::new(vec![5, 4, 3, 2, 1, 0]).unwrap()
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn identity_matrix_and_cycle_order() {
        assert_eq!(perm_matrix(&Permutation::identity(4)), ComplexMatrix::identity(4));
        let p = perm_matrix(&Permutation::cycle(3));
        let p3 = &(&p * &p) * &p;
        assert_eq!(p3, ComplexMatrix::identity(3));
    }

    #[test]
    fn cycle_notation_round_trip() {
        let p = Permutation::from_cycles(6, &[&[0, 2, 4], &[1, 5]]).unwrap();
        assert_eq!(p.cycle_notation(), "(0 2 4)(1 5)");
        assert_eq!(Permutation::identity(3).cycle_notation(), "()");
        assert_eq!(p.to_string(), "2 5 4 3 0 1");
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure(6, &[], DEFAULT_CLOSURE_CAP).unwrap().order(), 1);
        assert_eq!(closure(6, &[tau6()], DEFAULT_CLOSURE_CAP).unwrap().order(), 6);
        let d6 = closure(6, &[tau6(), rho6()], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(d6.order(), 12);
        assert!(d6.is_closed());
        assert!(matches!(
            closure(6, &[tau6(), rho6()], 5),
            Err(Error::ClosureCapExceeded { cap: 5 })
        ));
        assert!(closure(5, &[tau6()], 10).is_err());
    }

    #[test]
    fn aut_of_identity_is_symmetric_group() {
        let g = aut_bruteforce(&HermitianMatrix::identity(4), 1e-10).unwrap();
        assert_eq!(g.order(), 24);
        assert!(aut_bruteforce(&HermitianMatrix::identity(9), 1e-10).is_err());
    }

    #[test]
    fn reynolds_trivial_group_is_identity_map() {
        let x = ComplexMatrix::from_fn(3, 3, |i, j| C64::new(i as f64, j as f64));
        let y = reynolds_project(&PermutationGroup::trivial(3), &x).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn commutant_membership() {
        let d6 = closure(6, &[tau6(), rho6()], DEFAULT_CLOSURE_CAP).unwrap();
        assert!(in_commutant(&d6, &ComplexMatrix::identity(6), 1e-12));
        let diag = ComplexMatrix::diag_real(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert!(!in_commutant(&d6, &diag, 1e-12));
        let circ = ComplexMatrix::from_fn(6, 6, |i, j| {
            C64::new([4.0, 1.0, 0.5, 0.2, 0.5, 1.0][(j + 6 - i) % 6], 0.0)
        });
        assert!(in_commutant(&d6, &circ, 1e-12));
    }

    #[test]
    fn orbit_pairs_trivial_and_symmetric() {
        assert_eq!(orbit_pairs(&PermutationGroup::trivial(3)).num_blocks(), 9);
        let s4 = PermutationGroup::symmetric(4).unwrap();
        assert_eq!(orbit_pairs(&s4).num_blocks(), 2);
    }

    #[test]
    fn cyclic_orbits_are_difference_classes() {
        let c5 = closure(5, &[Permutation::cycle(5)], DEFAULT_CLOSURE_CAP).unwrap();
        let p = orbit_pairs(&c5);
        assert_eq!(p.num_blocks(), 5);
        for i in 0..5 {
            for j in 0..5 {
                for k in 0..5 {
                    for l in 0..5 {
                        let same = (j + 5 - i) % 5 == (l + 5 - k) % 5;
                        assert_eq!(p.block(i, j) == p.block(k, l), same);
                    }
                }
            }
        }
    }

    #[test]
    fn max_preserving_group_extremes() {
        let t = PermutationGroup::trivial(4);
        assert!(max_orbit_preserving_group(&orbit_pairs(&t)).unwrap().is_trivial());
        let s4 = PermutationGroup::symmetric(4).unwrap();
        assert_eq!(max_orbit_preserving_group(&orbit_pairs(&s4)).unwrap().order(), 24);
    }

    #[test]
    fn classify_extremes() {
        let s5 = PermutationGroup::symmetric(5).unwrap();
        assert_eq!(
            classify_identifiability(&s5, PairMode::Raw).unwrap(),
            Identifiability::Identifiable
        );
        for mode in [PairMode::Raw, PairMode::TransposeMerged] {
            assert_eq!(
                classify_identifiability(&PermutationGroup::trivial(4), mode).unwrap(),
                Identifiability::Identifiable
            );
        }
    }

    #[test]
    fn cyclic_group_real_mode_is_ambiguous_with_dihedral() {
        for m in 4..=6 {
            let cm = closure(m, &[Permutation::cycle(m)], DEFAULT_CLOSURE_CAP).unwrap();
            let refl = Permutation::new((0..m).map(|i| (m - i) % m).collect()).unwrap();
            let dm = closure(m, &[Permutation::cycle(m), refl], DEFAULT_CLOSURE_CAP).unwrap();
            match classify_identifiability(&cm, PairMode::TransposeMerged).unwrap() {
                Identifiability::Ambiguous(h) => assert!(dm.is_subgroup_of(&h), "M={m}"),
                other => panic!("M={m}: expected ambiguous, got {other:?}"),
            }
        }
    }
}
