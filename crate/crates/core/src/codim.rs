//! Graded codimensions as exact combinatorics.
//!
//! A multilinear monomial with letter multiplicities `v` evaluates into the
//! one-dimensional component of degree `degree_of(v)`, so the partial
//! codimension of `v` is 0 or 1: it is 1 exactly when some bracketing of the
//! letters is nonzero.  That feasibility satisfies a clean recursion: a
//! multidegree of total at least two is feasible iff it splits as
//! `v = v' + v''` with both halves feasible and the bracket coefficient of
//! their degrees nonzero.  The graded codimension is then the multinomial-
//! weighted count of feasible multidegrees.
//!
//! [`brute_force_monomial_values`] is the independent oracle: it evaluates
//! every bracketing of every ordering of the letter multiset with exact
//! matrices and never consults the structure table.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::pauli::GroupElement;
use crate::superalg::{supercommutator, PSuperalgebra, Parity, StructureTable};

/// Letter multiplicities of a multilinear monomial.  Letters follow the
/// basis order of [`PSuperalgebra`]: the `a` upper-right elements first,
/// then the `b` lower-left elements, then the `c` even elements.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiDegree {
    counts: Vec<u8>,
}

impl MultiDegree {
    pub fn new(counts: Vec<u8>) -> Self {
        assert!(!counts.is_empty());
        MultiDegree { counts }
    }

    pub fn from_slice(counts: &[u8]) -> Self {
        MultiDegree::new(counts.to_vec())
    }

    /// The unit vector with a single occurrence of letter `i`.
    pub fn unit(d: usize, i: usize) -> Self {
        assert!(i < d);
        let mut counts = vec![0u8; d];
        counts[i] = 1;
        MultiDegree { counts }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn counts(&self) -> &[u8] {
        &self.counts
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().map(|&c| c as u32).sum()
    }

    /// Position of the single letter if this is a unit vector.
    pub fn unit_letter(&self) -> Option<usize> {
        if self.total() != 1 {
            return None;
        }
        self.counts.iter().position(|&c| c == 1)
    }

    fn key(&self) -> Box<[u8]> {
        self.counts.clone().into_boxed_slice()
    }

    fn minus(&self, rhs: &MultiDegree) -> MultiDegree {
        let counts = self
            .counts
            .iter()
            .zip(&rhs.counts)
            .map(|(&a, &b)| a - b)
            .collect();
        MultiDegree { counts }
    }
}

/// Group degree of any monomial with these multiplicities: letters with an
/// odd count contribute their degree, everything else cancels.
pub fn degree_of(v: &MultiDegree, alg: &PSuperalgebra) -> Result<GroupElement> {
    if v.len() != alg.dim() {
        return Err(Error::Dimension(format!(
            "multidegree of length {} against an algebra of dimension {}",
            v.len(),
            alg.dim()
        )));
    }
    let mut g = GroupElement::identity(alg.group_len());
    for (i, &c) in v.counts().iter().enumerate() {
        if c % 2 == 1 {
            g = g.mul(&alg.element(i).degree)?;
        }
    }
    Ok(g)
}

/// Z-degree of any monomial with these multiplicities: upper-right letters
/// count +1, lower-left letters -1.
pub fn z_degree_of(v: &MultiDegree, alg: &PSuperalgebra) -> Result<i64> {
    if v.len() != alg.dim() {
        return Err(Error::Dimension(format!(
            "multidegree of length {} against an algebra of dimension {}",
            v.len(),
            alg.dim()
        )));
    }
    Ok(v.counts()
        .iter()
        .enumerate()
        .map(|(i, &c)| alg.element(i).z_deg as i64 * c as i64)
        .sum())
}

fn parity_of(v: &MultiDegree, alg: &PSuperalgebra) -> Parity {
    let odd: u32 = v
        .counts()
        .iter()
        .enumerate()
        .filter(|(i, _)| alg.element(*i).parity == Parity::Odd)
        .map(|(_, &c)| c as u32)
        .sum();
    if odd % 2 == 1 {
        Parity::Odd
    } else {
        Parity::Even
    }
}

/// Exact multinomial coefficient `total! / (n_1! ... n_d!)`.
pub fn multinomial(v: &MultiDegree) -> BigUint {
    let mut result = BigUint::one();
    let mut seen: u32 = 0;
    for &c in v.counts() {
        // Multiply the binomial (seen + c) choose c incrementally.
        for k in 1..=(c as u32) {
            seen += 1;
            result = result * BigUint::from(seen) / BigUint::from(k);
        }
    }
    result
}

/// All multidegrees of the given total, in ascending lexicographic order.
pub fn compositions(total: u32, parts: usize) -> Vec<MultiDegree> {
    assert!(total <= u8::MAX as u32);
    fn rec(remaining: u32, idx: usize, cur: &mut Vec<u8>, out: &mut Vec<MultiDegree>) {
        if idx == cur.len() - 1 {
            cur[idx] = remaining as u8;
            out.push(MultiDegree::from_slice(cur));
            return;
        }
        for x in 0..=remaining {
            cur[idx] = x as u8;
            rec(remaining - x, idx + 1, cur, out);
        }
        cur[idx] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u8; parts];
    rec(total, 0, &mut cur, &mut out);
    out
}

/// Iterator over all vectors `0 <= w <= v` componentwise, ascending lex.
struct SubVectors<'a> {
    bound: &'a [u8],
    cur: Vec<u8>,
    done: bool,
}

impl<'a> SubVectors<'a> {
    fn new(bound: &'a [u8]) -> Self {
        SubVectors {
            bound,
            cur: vec![0; bound.len()],
            done: false,
        }
    }
}

impl Iterator for SubVectors<'_> {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        let item = self.cur.clone();
        // Odometer increment, rightmost digit fastest.
        let mut i = self.cur.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.cur[i] < self.bound[i] {
                self.cur[i] += 1;
                for x in &mut self.cur[i + 1..] {
                    *x = 0;
                }
                break;
            }
        }
        Some(item)
    }
}

/// Memoized 0/1 feasibility for every multidegree up to a total, computed
/// level by level.  Each level is embarrassingly parallel because splits
/// only read strictly smaller totals; results are published between levels,
/// so the outcome is independent of the thread schedule.
#[derive(Debug)]
pub struct FeasibilityTable {
    d: usize,
    max_total: u32,
    memo: HashMap<Box<[u8]>, bool>,
    feasible_by_total: Vec<Vec<MultiDegree>>,
    level_elapsed_ms: Vec<u128>,
}

impl FeasibilityTable {
    /// Builds the table for all totals `1..=max_total`.
    ///
    /// Cost caps: the letter count must be at most 31 (block sizes 2 and 4),
    /// totals are capped at 6 for 31 letters, and at `u8::MAX` overall.
    pub fn build(
        alg: &PSuperalgebra,
        table: &StructureTable,
        max_total: u32,
    ) -> Result<FeasibilityTable> {
        let d = alg.dim();
        if d > 31 {
            return Err(Error::Resource(format!(
                "codimension DP supports at most 31 letters, got {d}"
            )));
        }
        if d > 7 && max_total > 6 {
            return Err(Error::Resource(format!(
                "totals above 6 are capped for {d} letters (got {max_total})"
            )));
        }
        if max_total > u8::MAX as u32 {
            return Err(Error::Resource(format!("total {max_total} exceeds 255")));
        }

        let mut this = FeasibilityTable {
            d,
            max_total,
            memo: HashMap::new(),
            feasible_by_total: vec![Vec::new()],
            level_elapsed_ms: vec![0],
        };
        for k in 1..=max_total {
            let started = std::time::Instant::now();
            let level = compositions(k, d);
            let results: Vec<(MultiDegree, bool)> = level
                .into_par_iter()
                .map(|v| {
                    let f = this.decide(&v, alg, table);
                    (v, f)
                })
                .collect();
            let mut feasible = Vec::new();
            for (v, f) in results {
                if f {
                    feasible.push(v.clone());
                }
                this.memo.insert(v.key(), f);
            }
            this.feasible_by_total.push(feasible);
            this.level_elapsed_ms.push(started.elapsed().as_millis());
        }
        Ok(this)
    }

    /// Wall-clock milliseconds spent on one DP level during the build.
    pub fn level_elapsed_ms(&self, total: u32) -> u128 {
        self.level_elapsed_ms[total as usize]
    }

    /// Feasibility of one multidegree with all strictly smaller totals
    /// already memoized.
    fn decide(&self, v: &MultiDegree, alg: &PSuperalgebra, table: &StructureTable) -> bool {
        if v.total() == 1 {
            return true;
        }
        // Monomials with an out-of-range Z-degree or a degree outside the
        // support evaluate into a zero component.
        match z_degree_of(v, alg) {
            Ok(z) if z.abs() <= 1 => {}
            _ => return false,
        }
        match degree_of(v, alg) {
            Ok(g) if alg.in_support(&g) => {}
            _ => return false,
        }
        self.find_split(v, alg, table).is_some()
    }

    /// First split `v = left + right` (in the canonical enumeration order)
    /// with both halves feasible and a nonzero bracket coefficient in the
    /// returned orientation.  Halved by only visiting `v'` that are
    /// lexicographically at most `v - v'`; both bracket orders are checked.
    fn find_split(
        &self,
        v: &MultiDegree,
        alg: &PSuperalgebra,
        table: &StructureTable,
    ) -> Option<(MultiDegree, MultiDegree)> {
        for counts in SubVectors::new(v.counts()) {
            let v1 = MultiDegree::new(counts);
            if v1.total() == 0 || v1.total() == v.total() {
                continue;
            }
            let v2 = v.minus(&v1);
            if v1.counts() > v2.counts() {
                continue;
            }
            let f1 = *self.memo.get(&v1.key()).expect("lower level memoized");
            if !f1 {
                continue;
            }
            let f2 = *self.memo.get(&v2.key()).expect("lower level memoized");
            if !f2 {
                continue;
            }
            let g1 = degree_of(&v1, alg).expect("validated length");
            let g2 = degree_of(&v2, alg).expect("validated length");
            let i1 = alg.index_of(&g1).expect("feasible degree in support");
            let i2 = alg.index_of(&g2).expect("feasible degree in support");
            if table.lambda(i1, i2) != 0 {
                return Some((v1, v2));
            }
            if table.lambda(i2, i1) != 0 {
                return Some((v2, v1));
            }
        }
        None
    }

    pub fn letter_count(&self) -> usize {
        self.d
    }

    pub fn max_total(&self) -> u32 {
        self.max_total
    }

    pub fn is_feasible(&self, v: &MultiDegree) -> Result<bool> {
        if v.len() != self.d {
            return Err(Error::Dimension(format!(
                "multidegree of length {} against {} letters",
                v.len(),
                self.d
            )));
        }
        if v.total() == 0 || v.total() > self.max_total {
            return Err(Error::Domain(format!(
                "total {} outside the computed range 1..={}",
                v.total(),
                self.max_total
            )));
        }
        Ok(*self.memo.get(&v.key()).expect("computed range memoized"))
    }

    /// Feasible multidegrees of one total, ascending lex.
    pub fn feasible_at(&self, total: u32) -> &[MultiDegree] {
        &self.feasible_by_total[total as usize]
    }

    pub fn feasible_count(&self, total: u32) -> usize {
        self.feasible_by_total[total as usize].len()
    }

    /// Exact graded codimension: the multinomial-weighted count of feasible
    /// multidegrees of total `n`.
    pub fn graded_codimension(&self, n: u32) -> Result<BigUint> {
        if n == 0 || n > self.max_total {
            return Err(Error::Domain(format!(
                "n = {n} outside the computed range 1..={}",
                self.max_total
            )));
        }
        Ok(self.feasible_at(n).iter().map(multinomial).sum())
    }

    /// One explicit nonzero bracketing for a feasible multidegree, `None`
    /// for an infeasible one.  The returned tree is deterministic.
    pub fn witness(
        &self,
        v: &MultiDegree,
        alg: &PSuperalgebra,
        table: &StructureTable,
    ) -> Result<Option<WitnessTree>> {
        if !self.is_feasible(v)? {
            return Ok(None);
        }
        Ok(Some(self.witness_inner(v, alg, table)))
    }

    fn witness_inner(
        &self,
        v: &MultiDegree,
        alg: &PSuperalgebra,
        table: &StructureTable,
    ) -> WitnessTree {
        if let Some(i) = v.unit_letter() {
            return WitnessTree::Leaf(i);
        }
        let (left, right) = self
            .find_split(v, alg, table)
            .expect("feasible multidegree has a split");
        WitnessTree::Bracket(
            Box::new(self.witness_inner(&left, alg, table)),
            Box::new(self.witness_inner(&right, alg, table)),
        )
    }
}

/// A full bracketing of a multiset of letters (leaves are basis indices).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WitnessTree {
    Leaf(usize),
    Bracket(Box<WitnessTree>, Box<WitnessTree>),
}

impl WitnessTree {
    pub fn leaf_count(&self) -> u32 {
        match self {
            WitnessTree::Leaf(_) => 1,
            WitnessTree::Bracket(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    /// Letter multiplicities of the leaves.
    pub fn multidegree(&self, d: usize) -> MultiDegree {
        fn fill(tree: &WitnessTree, counts: &mut [u8]) {
            match tree {
                WitnessTree::Leaf(i) => counts[*i] += 1,
                WitnessTree::Bracket(l, r) => {
                    fill(l, counts);
                    fill(r, counts);
                }
            }
        }
        let mut counts = vec![0u8; d];
        fill(self, &mut counts);
        MultiDegree::new(counts)
    }

    /// Exact evaluation in the algebra; returns the matrix and its parity.
    pub fn eval(&self, alg: &PSuperalgebra) -> Result<(IntMatrix, Parity)> {
        match self {
            WitnessTree::Leaf(i) => {
                let e = alg.element(*i);
                Ok((e.matrix.clone(), e.parity))
            }
            WitnessTree::Bracket(l, r) => {
                let (ml, pl) = l.eval(alg)?;
                let (mr, pr) = r.eval(alg)?;
                Ok((supercommutator(&ml, &mr, pl, pr)?, pl.flip_if(pr)))
            }
        }
    }
}

impl std::fmt::Display for WitnessTree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WitnessTree::Leaf(i) => write!(f, "x{i}"),
            WitnessTree::Bracket(l, r) => write!(f, "[{l}, {r}]"),
        }
    }
}

/// Caps the brute-force oracle: all bracketings of all orderings of a
/// multiset explode combinatorially past this total.
pub const BRUTE_FORCE_MAX_TOTAL: u32 = 7;

/// Every distinct value attained by some bracketing of some ordering of the
/// letter multiset, computed purely with exact matrices.  Zero values are
/// dropped (a bracket with a zero operand is zero).
///
/// Equivalent to enumerating all full binary trees over all orderings:
/// a tree over an ordering is a recursive split of the multiset into two
/// nonempty sub-multisets, so the closure below visits exactly the same
/// evaluations while sharing repeated sub-multisets.
pub fn brute_force_monomial_values(v: &MultiDegree, alg: &PSuperalgebra) -> Result<Vec<IntMatrix>> {
    if v.len() != alg.dim() {
        return Err(Error::Dimension(format!(
            "multidegree of length {} against an algebra of dimension {}",
            v.len(),
            alg.dim()
        )));
    }
    if v.total() > BRUTE_FORCE_MAX_TOTAL {
        return Err(Error::Resource(format!(
            "brute-force enumeration is capped at total {BRUTE_FORCE_MAX_TOTAL}, got {}",
            v.total()
        )));
    }
    if v.total() == 0 {
        return Ok(Vec::new());
    }

    let mut subs: Vec<MultiDegree> = SubVectors::new(v.counts())
        .map(MultiDegree::new)
        .filter(|m| m.total() >= 1)
        .collect();
    subs.sort_by_key(MultiDegree::total);

    let mut memo: HashMap<Box<[u8]>, Vec<IntMatrix>> = HashMap::new();
    for m in subs {
        let values = if let Some(i) = m.unit_letter() {
            vec![alg.element(i).matrix.clone()]
        } else {
            let mut acc: Vec<IntMatrix> = Vec::new();
            for counts in SubVectors::new(m.counts()) {
                let m1 = MultiDegree::new(counts);
                if m1.total() == 0 || m1.total() == m.total() {
                    continue;
                }
                let m2 = m.minus(&m1);
                let p1 = parity_of(&m1, alg);
                let p2 = parity_of(&m2, alg);
                let vs1 = &memo[&m1.key()];
                let vs2 = &memo[&m2.key()];
                for a in vs1 {
                    for b in vs2 {
                        let c = supercommutator(a, b, p1, p2)?;
                        if !c.is_zero() && !acc.contains(&c) {
                            acc.push(c);
                        }
                    }
                }
            }
            acc
        };
        memo.insert(m.key(), values);
    }
    Ok(memo.remove(&v.key()).expect("root multidegree visited"))
}

/// True iff some monomial with these multiplicities evaluates to a nonzero
/// matrix.  Independent of the feasibility DP.
pub fn brute_force_feasible(v: &MultiDegree, alg: &PSuperalgebra) -> Result<bool> {
    Ok(!brute_force_monomial_values(v, alg)?.is_empty())
}
