//! The Lie superalgebra `P(t)` for `t = 2^q`, its grading by
//! `G = (Z_2)^{2q+1}`, and mechanical verification of the structural
//! properties the rest of the crate depends on.
//!
//! `P(t)` sits inside `2t x 2t` matrices: the even part consists of blocks
//! `diag(A, -A^T)` with `tr A = 0`, the odd part of a symmetric upper-right
//! block or a skew lower-left block.  Homogeneous basis elements are built
//! from sign-`+` tensor words: a word `X` of degree `g` yields the even
//! element `diag(X, -X^T)` of degree `g` (for `g` not the identity), and the
//! odd element with block `X` of degree `a0 * g` (upper-right when `X` is
//! symmetric, lower-left when skew).  Each basis element uses the word with
//! scalar one; the structure constants below depend on that normalization,
//! their zero pattern does not.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::pauli::{GroupElement, PauliWord};
use crate::report::CheckReport;

/// Z_2-degree of a homogeneous element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn value(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flip_if(self, other: Parity) -> Parity {
        if other == Parity::Odd {
            match self {
                Parity::Even => Parity::Odd,
                Parity::Odd => Parity::Even,
            }
        } else {
            self
        }
    }
}

/// Which of the three block shapes a basis element has.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Even,
    OddSymmetric,
    OddSkew,
}

/// One homogeneous basis vector of `P(t)`.
#[derive(Clone, Debug)]
pub struct BasisElement {
    pub degree: GroupElement,
    pub parity: Parity,
    /// Component of the short Z-grading: 0 for even, +1 for the upper-right
    /// block, -1 for the lower-left block.
    pub z_deg: i8,
    pub kind: Kind,
    /// Underlying sign-`+` word whose matrix fills the block(s).
    pub word: PauliWord,
    /// The full `2t x 2t` realization.
    pub matrix: IntMatrix,
}

/// `P(2^q)` with its group grading.  Basis order is fixed and public:
/// first the `a` upper-right elements, then the `b` lower-left elements,
/// then the `c` even elements, each segment sorted by degree.  This order
/// is the letter order used by multidegrees.
#[derive(Clone, Debug)]
pub struct PSuperalgebra {
    q: u32,
    t: usize,
    counts: (usize, usize, usize),
    basis: Vec<BasisElement>,
    index: HashMap<GroupElement, usize>,
}

impl PSuperalgebra {
    /// Builds the algebra.  Supported range: `1 <= q <= 4` (matrices up to
    /// 32x32).
    pub fn build(q: u32) -> Result<PSuperalgebra> {
        if !(1..=4).contains(&q) {
            return Err(Error::Config(format!(
                "q = {q} outside supported range 1..=4"
            )));
        }
        let qu = q as usize;
        let t = 1usize << qu;
        let glen = 2 * qu + 1;
        let a0 = GroupElement::gen_a0(glen);

        let words = PauliWord::enumerate(qu);
        let mut sym: Vec<&PauliWord> = Vec::new();
        let mut skew: Vec<&PauliWord> = Vec::new();
        let mut even: Vec<&PauliWord> = Vec::new();
        for w in &words {
            if w.is_symmetric() {
                sym.push(w);
            } else {
                skew.push(w);
            }
            if !w.degree().is_identity() {
                even.push(w);
            }
        }
        let sort_by_degree = |v: &mut Vec<&PauliWord>| {
            v.sort_by_key(|w| w.degree().value());
        };
        sort_by_degree(&mut sym);
        sort_by_degree(&mut skew);
        sort_by_degree(&mut even);

        let mut basis = Vec::with_capacity(2 * t * t - 1);
        for w in sym {
            basis.push(BasisElement {
                degree: a0.mul(&w.degree())?,
                parity: Parity::Odd,
                z_deg: 1,
                kind: Kind::OddSymmetric,
                word: w.clone(),
                matrix: embed_upper_right(&w.to_matrix(), t),
            });
        }
        for w in skew {
            basis.push(BasisElement {
                degree: a0.mul(&w.degree())?,
                parity: Parity::Odd,
                z_deg: -1,
                kind: Kind::OddSkew,
                word: w.clone(),
                matrix: embed_lower_left(&w.to_matrix(), t),
            });
        }
        for w in even {
            basis.push(BasisElement {
                degree: w.degree(),
                parity: Parity::Even,
                z_deg: 0,
                kind: Kind::Even,
                word: w.clone(),
                matrix: embed_even(&w.to_matrix(), t),
            });
        }

        let counts = (
            (t * (t + 1)) / 2, // symmetric words
            (t * (t - 1)) / 2, // skew words
            t * t - 1,         // non-identity degrees
        );
        if basis.len() != 2 * t * t - 1 || counts.0 + counts.1 + counts.2 != basis.len() {
            return Err(Error::Inconsistency(format!(
                "basis size {} does not match 2t^2-1 = {}",
                basis.len(),
                2 * t * t - 1
            )));
        }

        let mut index = HashMap::with_capacity(basis.len());
        for (i, e) in basis.iter().enumerate() {
            if index.insert(e.degree, i).is_some() {
                return Err(Error::Inconsistency(format!(
                    "support degree {} hit twice",
                    e.degree
                )));
            }
        }
        if index.contains_key(&GroupElement::identity(glen)) {
            return Err(Error::Inconsistency(
                "identity degree appeared in the support".into(),
            ));
        }

        Ok(PSuperalgebra {
            q,
            t,
            counts,
            basis,
            index,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Block size `t = 2^q`.
    pub fn t(&self) -> usize {
        self.t
    }

    /// Bit length of group elements, `2q + 1`.
    pub fn group_len(&self) -> usize {
        2 * self.q as usize + 1
    }

    /// `(a, b, c)`: numbers of upper-right, lower-left and even basis
    /// elements.
    pub fn counts(&self) -> (usize, usize, usize) {
        self.counts
    }

    /// Dimension of the algebra, `a + b + c = 2t^2 - 1`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn element(&self, i: usize) -> &BasisElement {
        &self.basis[i]
    }

    pub fn in_support(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Support degrees in basis order.
    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.basis.iter().map(|e| &e.degree)
    }
}

fn embed_upper_right(x: &IntMatrix, t: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(2 * t, 2 * t);
    for i in 0..t {
        for j in 0..t {
            m.set(i, t + j, x.get(i, j).clone());
        }
    }
    m
}

fn embed_lower_left(x: &IntMatrix, t: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(2 * t, 2 * t);
    for i in 0..t {
        for j in 0..t {
            m.set(t + i, j, x.get(i, j).clone());
        }
    }
    m
}

fn embed_even(x: &IntMatrix, t: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(2 * t, 2 * t);
    let xt = x.transpose();
    for i in 0..t {
        for j in 0..t {
            m.set(i, j, x.get(i, j).clone());
            m.set(t + i, t + j, -xt.get(i, j));
        }
    }
    m
}

/// `xy - (-1)^{px py} yx`, exactly.
pub fn supercommutator(x: &IntMatrix, y: &IntMatrix, px: Parity, py: Parity) -> Result<IntMatrix> {
    let xy = x.mul(y)?;
    let yx = y.mul(x)?;
    if px == Parity::Odd && py == Parity::Odd {
        xy.add(&yx)
    } else {
        xy.sub(&yx)
    }
}

/// Bracket coefficients on the support: `[e_g, e_h] = lambda(g, h) e_{gh}`.
/// Entries exist for every ordered support pair with `gh` in the support
/// (zero values included); the only absent pairs are `g = h`, where the
/// bracket is forced to vanish and is checked to do so.
#[derive(Clone, Debug)]
pub struct StructureTable {
    dim: usize,
    /// Dense row-major `dim x dim`; the diagonal stores 0.
    lambda: Vec<i64>,
}

impl StructureTable {
    /// Computes every bracket with exact matrices and factors it through
    /// the one-dimensional components.  A bracket that is not an integer
    /// multiple of the expected basis element is a construction bug and
    /// surfaces as an inconsistency error.
    pub fn build(alg: &PSuperalgebra) -> Result<StructureTable> {
        let d = alg.dim();
        let mut lambda = vec![0i64; d * d];
        for i in 0..d {
            for j in 0..d {
                let ei = alg.element(i);
                let ej = alg.element(j);
                let bracket = supercommutator(&ei.matrix, &ej.matrix, ei.parity, ej.parity)?;
                let product = ei.degree.mul(&ej.degree)?;
                match alg.index_of(&product) {
                    None => {
                        if !bracket.is_zero() {
                            return Err(Error::Inconsistency(format!(
                                "[e_{}, e_{}] lands outside the support but is nonzero",
                                ei.degree, ej.degree
                            )));
                        }
                    }
                    Some(k) => {
                        let target = &alg.element(k).matrix;
                        let coeff = bracket.integer_multiple_of(target).ok_or_else(|| {
                            Error::Inconsistency(format!(
                                "[e_{}, e_{}] is not an integer multiple of e_{}",
                                ei.degree, ej.degree, product
                            ))
                        })?;
                        lambda[i * d + j] = big_to_i64(&coeff)?;
                    }
                }
            }
        }
        Ok(StructureTable { dim: d, lambda })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficient by basis index.
    pub fn lambda(&self, i: usize, j: usize) -> i64 {
        self.lambda[i * self.dim + j]
    }

    /// Coefficient by degree; `None` when `gh` is outside the support
    /// (equivalently `g = h`).
    pub fn lambda_of(
        &self,
        alg: &PSuperalgebra,
        g: &GroupElement,
        h: &GroupElement,
    ) -> Option<i64> {
        let i = alg.index_of(g)?;
        let j = alg.index_of(h)?;
        let product = g.mul(h).ok()?;
        alg.index_of(&product)?;
        Some(self.lambda(i, j))
    }

    /// JSON export: `{q, support: [hex], lambda: [[g, h, coeff]]}` with
    /// rows ordered by basis position.
    pub fn to_json_string(&self, alg: &PSuperalgebra) -> String {
        #[derive(Serialize)]
        struct Dump {
            q: u32,
            support: Vec<String>,
            lambda: Vec<(String, String, i64)>,
        }
        let dump = Dump {
            q: alg.q(),
            support: alg.support().map(GroupElement::to_hex).collect(),
            lambda: self.triples(alg),
        };
        let mut s = serde_json::to_string_pretty(&dump).expect("serialization cannot fail");
        s.push('\n');
        s
    }

    /// CSV export of the same triples, header `g,h,lambda`.
    pub fn to_csv_string(&self, alg: &PSuperalgebra) -> String {
        let mut out = String::from("g,h,lambda\n");
        for (g, h, l) in self.triples(alg) {
            out.push_str(&format!("{g},{h},{l}\n"));
        }
        out
    }

    fn triples(&self, alg: &PSuperalgebra) -> Vec<(String, String, i64)> {
        let d = self.dim;
        let mut rows = Vec::with_capacity(d * d - d);
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    continue;
                }
                rows.push((
                    alg.element(i).degree.to_hex(),
                    alg.element(j).degree.to_hex(),
                    self.lambda(i, j),
                ));
            }
        }
        rows
    }
}

fn big_to_i64(x: &BigInt) -> Result<i64> {
    if x.abs() > BigInt::from(i64::MAX) {
        return Err(Error::Inconsistency(format!(
            "structure coefficient {x} does not fit in 64 bits"
        )));
    }
    let digits = x.iter_u64_digits().next().unwrap_or(0) as i64;
    Ok(if x.is_negative() { -digits } else { digits })
}

/// Checks the five structural claims about the graded matrix algebra
/// `M_{2^q}`: the degree map respects products, homogeneous components are
/// one-dimensional, every basis word is symmetric or skew, every word is
/// invertible, and every word of non-identity degree is traceless.
pub fn verify_prop1(q: u32) -> Result<CheckReport> {
    if !(1..=4).contains(&q) {
        return Err(Error::Config(format!(
            "q = {q} outside supported range 1..=4"
        )));
    }
    let mut report = CheckReport::new(format!("matrix algebra grading, q={q}"));
    let words = PauliWord::enumerate(q as usize);

    let mut bad = None;
    'outer: for u in &words {
        for v in &words {
            let prod = u.mul(v)?;
            if prod.degree() != u.degree().mul(&v.degree())? {
                bad = Some(format!("deg({u} * {v}) != deg({u}) deg({v})"));
                break 'outer;
            }
        }
    }
    report.record("degree map respects products", bad.is_none(), bad);

    let mut degrees: Vec<u32> = words.iter().map(|w| w.degree().value()).collect();
    degrees.sort_unstable();
    let distinct = degrees.windows(2).all(|w| w[0] != w[1]);
    report.record(
        "homogeneous components are one-dimensional",
        distinct && degrees.len() == words.len(),
        Some("degree map is not injective on sign-+ words".into()),
    );

    let mut bad = None;
    for w in &words {
        let m = w.to_matrix();
        let mt = m.transpose();
        let symmetric = mt == m;
        let skew = mt == m.scale_i64(-1);
        if !(symmetric || skew) {
            bad = Some(format!("{w} is neither symmetric nor skew"));
            break;
        }
        if symmetric != w.is_symmetric() {
            bad = Some(format!("{w}: transpose parity disagrees with s3 count"));
            break;
        }
    }
    report.record("every basis word is symmetric or skew", bad.is_none(), bad);

    let mut bad = None;
    for w in &words {
        if w.to_matrix().det()?.is_zero() {
            bad = Some(format!("{w} has determinant zero"));
            break;
        }
    }
    report.record("every basis word is invertible", bad.is_none(), bad);

    let mut bad = None;
    for w in &words {
        if !w.degree().is_identity() && !w.to_matrix().trace()?.is_zero() {
            bad = Some(format!("{w} has non-identity degree but nonzero trace"));
            break;
        }
    }
    report.record(
        "traceless matrices form a homogeneous subspace",
        bad.is_none(),
        bad,
    );

    Ok(report)
}

/// Classifies every ordered support pair of `P(2^q)` by its bracket:
/// two odd elements of the same block shape must bracket to zero, two odd
/// elements of different shapes to a matrix with invertible diagonal
/// blocks, and in every remaining case the bracket is either zero or has
/// all of its nonzero `t x t` blocks invertible.
pub fn verify_prop2(alg: &PSuperalgebra) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("superalgebra bracket scan, q={}", alg.q()));
    let t = alg.t();
    let d = alg.dim();

    let mut same_kind_failures = None;
    let mut mixed_failures = None;
    let mut block_failures = None;
    let mut zero_count = 0usize;
    let mut invertible_count = 0usize;

    for i in 0..d {
        for j in 0..d {
            let ei = alg.element(i);
            let ej = alg.element(j);
            let bracket = supercommutator(&ei.matrix, &ej.matrix, ei.parity, ej.parity)?;
            let both_odd = ei.parity == Parity::Odd && ej.parity == Parity::Odd;
            if both_odd && ei.kind == ej.kind {
                if !bracket.is_zero() {
                    same_kind_failures.get_or_insert(format!(
                        "[e_{}, e_{}]: same odd shape but nonzero bracket",
                        ei.degree, ej.degree
                    ));
                }
                zero_count += 1;
                continue;
            }
            if bracket.is_zero() {
                if both_odd {
                    mixed_failures.get_or_insert(format!(
                        "[e_{}, e_{}]: mixed odd shapes but zero bracket",
                        ei.degree, ej.degree
                    ));
                }
                zero_count += 1;
                continue;
            }
            // Nonzero bracket: every nonzero t x t block must be invertible.
            let mut all_blocks_ok = true;
            for (r0, c0) in [(0, 0), (0, t), (t, 0), (t, t)] {
                let blk = bracket.block(r0, c0, t, t);
                if !blk.is_zero() && blk.det()?.is_zero() {
                    all_blocks_ok = false;
                }
            }
            if !all_blocks_ok {
                block_failures.get_or_insert(format!(
                    "[e_{}, e_{}]: nonzero block with zero determinant",
                    ei.degree, ej.degree
                ));
            }
            if both_odd && bracket.det()?.is_zero() {
                mixed_failures.get_or_insert(format!(
                    "[e_{}, e_{}]: mixed odd shapes but singular bracket",
                    ei.degree, ej.degree
                ));
            }
            invertible_count += 1;
        }
    }

    report.record(
        "same-shape odd pairs bracket to zero",
        same_kind_failures.is_none(),
        same_kind_failures,
    );
    report.record(
        "mixed-shape odd pairs bracket to invertible matrices",
        mixed_failures.is_none(),
        mixed_failures,
    );
    report.record(
        format!(
            "nonzero blocks invertible across the scan ({invertible_count} nonzero, {zero_count} zero of {} pairs)",
            d * d
        ),
        block_failures.is_none(),
        block_failures,
    );
    Ok(report)
}

/// How to pick basis triples for the axiom check.
#[derive(Clone, Copy, Debug)]
pub enum TripleSelection {
    Exhaustive,
    Random { count: usize, seed: u64 },
}

/// Verifies super-anticommutativity on all basis pairs and the super
/// Jacobi identity on the selected triples, with exact matrices.
pub fn verify_super_axioms(alg: &PSuperalgebra, sel: TripleSelection) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("superalgebra axioms, q={}", alg.q()));
    let d = alg.dim();

    let mut bad = None;
    'pairs: for i in 0..d {
        for j in 0..d {
            let (x, y) = (alg.element(i), alg.element(j));
            let xy = supercommutator(&x.matrix, &y.matrix, x.parity, y.parity)?;
            let yx = supercommutator(&y.matrix, &x.matrix, y.parity, x.parity)?;
            // [x, y] + (-1)^{|x||y|} [y, x] = 0
            let flipped = if x.parity == Parity::Odd && y.parity == Parity::Odd {
                xy.sub(&yx)?
            } else {
                xy.add(&yx)?
            };
            if !flipped.is_zero() {
                bad = Some(format!(
                    "anticommutativity fails on (e_{}, e_{})",
                    x.degree, y.degree
                ));
                break 'pairs;
            }
        }
    }
    report.record(
        format!("super-anticommutativity on all {} pairs", d * d),
        bad.is_none(),
        bad,
    );

    let triples: Vec<(usize, usize, usize)> = match sel {
        TripleSelection::Exhaustive => {
            let mut v = Vec::with_capacity(d * d * d);
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        v.push((i, j, k));
                    }
                }
            }
            v
        }
        TripleSelection::Random { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| {
                    (
                        rng.gen_range(0..d),
                        rng.gen_range(0..d),
                        rng.gen_range(0..d),
                    )
                })
                .collect()
        }
    };

    let n_triples = triples.len();
    let mut bad = None;
    for (i, j, k) in triples {
        let (x, y, z) = (alg.element(i), alg.element(j), alg.element(k));
        if !super_jacobi_holds(x, y, z)? {
            bad = Some(format!(
                "Jacobi fails on (e_{}, e_{}, e_{})",
                x.degree, y.degree, z.degree
            ));
            break;
        }
    }
    report.record(
        format!("super Jacobi identity on {n_triples} triples"),
        bad.is_none(),
        bad,
    );

    Ok(report)
}

/// `[x, [y, z]] = [[x, y], z] + (-1)^{|x||y|} [y, [x, z]]` with exact
/// matrices and parity bookkeeping for the inner brackets.
fn super_jacobi_holds(x: &BasisElement, y: &BasisElement, z: &BasisElement) -> Result<bool> {
    let yz = supercommutator(&y.matrix, &z.matrix, y.parity, z.parity)?;
    let lhs = supercommutator(&x.matrix, &yz, x.parity, y.parity.flip_if(z.parity))?;

    let xy = supercommutator(&x.matrix, &y.matrix, x.parity, y.parity)?;
    let first = supercommutator(&xy, &z.matrix, x.parity.flip_if(y.parity), z.parity)?;

    let xz = supercommutator(&x.matrix, &z.matrix, x.parity, z.parity)?;
    let second = supercommutator(&y.matrix, &xz, y.parity, x.parity.flip_if(z.parity))?;

    let rhs = if x.parity == Parity::Odd && y.parity == Parity::Odd {
        first.sub(&second)?
    } else {
        first.add(&second)?
    };
    Ok(lhs == rhs)
}
