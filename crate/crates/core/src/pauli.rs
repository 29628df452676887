//! The elementary abelian 2-group `G = (Z_2)^{2q+1}` and signed tensor words
//! over the four real Pauli-type generators of `M_2`.
//!
//! Bit layout of a group element: `(a0, a1, b1, ..., aq, bq)` with `a0` in
//! the least significant position.  The hex serialization below is part of
//! the on-disk format and must not change.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Element of the grading group, a bit vector of length `2q + 1` under
/// componentwise XOR.  Every element is its own inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GroupElement {
    bits: u32,
    len: u8,
}

impl GroupElement {
    /// The identity (all-zero) element of the group of the given bit length.
    pub fn identity(len: usize) -> Self {
        assert!(len >= 1 && len <= 31, "bit length out of range");
        GroupElement {
            bits: 0,
            len: len as u8,
        }
    }

    pub fn from_bits(bits: u32, len: usize) -> Self {
        assert!(len >= 1 && len <= 31, "bit length out of range");
        assert!(bits < (1 << len), "bit pattern wider than declared length");
        GroupElement {
            bits,
            len: len as u8,
        }
    }

    /// Group operation: componentwise XOR.
    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.len != other.len {
            return Err(Error::Dimension(format!(
                "group elements of length {} and {}",
                self.len, other.len
            )));
        }
        Ok(GroupElement {
            bits: self.bits ^ other.bits,
            len: self.len,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.bits == 0
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn bit(&self, i: usize) -> bool {
        assert!(i < self.len as usize);
        (self.bits >> i) & 1 == 1
    }

    /// The `a0` bit, which separates the even part (`a0 = 0`) from the odd
    /// part (`a0 = 1`) of a compatible superalgebra grading.
    pub fn a0(&self) -> bool {
        self.bit(0)
    }

    /// Generator `a_i` (`1 <= i <= q`), stored at bit `2i - 1`.
    pub fn gen_a(i: usize, len: usize) -> Self {
        assert!(i >= 1 && 2 * i - 1 < len);
        GroupElement {
            bits: 1 << (2 * i - 1),
            len: len as u8,
        }
    }

    /// Generator `b_i` (`1 <= i <= q`), stored at bit `2i`.
    pub fn gen_b(i: usize, len: usize) -> Self {
        assert!(i >= 1 && 2 * i < len);
        GroupElement {
            bits: 1 << (2 * i),
            len: len as u8,
        }
    }

    /// Generator `a_0`, stored at bit 0.
    pub fn gen_a0(len: usize) -> Self {
        GroupElement {
            bits: 1,
            len: len as u8,
        }
    }

    pub fn value(&self) -> u32 {
        self.bits
    }

    /// Lowercase fixed-width hex of the bit vector, `a0` least significant.
    /// Width is `ceil(len / 4)` digits.
    pub fn to_hex(&self) -> String {
        let width = (self.len as usize + 3) / 4;
        format!("{:0width$x}", self.bits, width = width)
    }

    pub fn from_hex(s: &str, len: usize) -> Result<GroupElement> {
        let bits = u32::from_str_radix(s, 16)
            .map_err(|e| Error::Parse(format!("bad hex group element {s:?}: {e}")))?;
        if len < 1 || len > 31 || bits >= (1u32 << len) {
            return Err(Error::Parse(format!(
                "hex value {s:?} does not fit in {len} bits"
            )));
        }
        Ok(GroupElement {
            bits,
            len: len as u8,
        })
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Sign of a word, closed under multiplication of the four generator
/// matrices: no other scalars ever appear.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn mul(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// One tensor factor.  The two-bit encoding `(x, z)` makes products XOR:
/// `s0 = 00`, `s1 = 01` (diagonal), `s2 = 10` (swap), `s3 = 11`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
#[repr(u8)]
pub enum Sigma {
    S0 = 0,
    S1 = 1,
    S2 = 2,
    S3 = 3,
}

impl Sigma {
    pub const ALL: [Sigma; 4] = [Sigma::S0, Sigma::S1, Sigma::S2, Sigma::S3];

    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn from_index(i: u8) -> Option<Sigma> {
        match i {
            0 => Some(Sigma::S0),
            1 => Some(Sigma::S1),
            2 => Some(Sigma::S2),
            3 => Some(Sigma::S3),
            _ => None,
        }
    }

    fn x_bit(self) -> u8 {
        (self as u8) >> 1
    }

    fn z_bit(self) -> u8 {
        (self as u8) & 1
    }

    /// Product of two factors: the symbol is the XOR of the encodings and
    /// the sign is `(-1)^{x(lhs) & z(rhs)}` (writing each factor as a swap
    /// power times a diagonal power and commuting them past each other).
    pub fn mul(self, rhs: Sigma) -> (Sigma, Sign) {
        let sym = Sigma::from_index(self.index() ^ rhs.index()).unwrap();
        let sign = if self.x_bit() & rhs.z_bit() == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        };
        (sym, sign)
    }

    /// The 2x2 integer matrix of this factor.
    pub fn matrix(self) -> IntMatrix {
        let rows: [[i64; 2]; 2] = match self {
            Sigma::S0 => [[1, 0], [0, 1]],
            Sigma::S1 => [[1, 0], [0, -1]],
            Sigma::S2 => [[0, 1], [1, 0]],
            Sigma::S3 => [[0, 1], [-1, 0]],
        };
        IntMatrix::from_i64_rows(&rows.map(|r| r.to_vec()))
    }

    /// Transposing flips the sign of `s3` only.
    pub fn transpose_sign(self) -> Sign {
        match self {
            Sigma::S3 => Sign::Minus,
            _ => Sign::Plus,
        }
    }
}

/// A signed tensor word of length `q` over the four factors.  Words are
/// closed under multiplication with sign in `{+1, -1}` and form a basis of
/// the `2^q x 2^q` matrix algebra.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PauliWord {
    sign: Sign,
    symbols: Vec<Sigma>,
}

impl PauliWord {
    pub fn new(sign: Sign, symbols: Vec<Sigma>) -> Self {
        assert!(!symbols.is_empty(), "empty word");
        PauliWord { sign, symbols }
    }

    /// The multiplicative identity: all factors `s0`, sign `+`.
    pub fn identity(q: usize) -> Self {
        PauliWord::new(Sign::Plus, vec![Sigma::S0; q])
    }

    pub fn q(&self) -> usize {
        self.symbols.len()
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn symbols(&self) -> &[Sigma] {
        &self.symbols
    }

    pub fn with_sign(&self, sign: Sign) -> PauliWord {
        PauliWord {
            sign,
            symbols: self.symbols.clone(),
        }
    }

    /// Exact product; the result is again a signed word.
    pub fn mul(&self, rhs: &PauliWord) -> Result<PauliWord> {
        if self.q() != rhs.q() {
            return Err(Error::Dimension(format!(
                "words of length {} and {}",
                self.q(),
                rhs.q()
            )));
        }
        let mut sign = self.sign.mul(rhs.sign);
        let symbols = self
            .symbols
            .iter()
            .zip(&rhs.symbols)
            .map(|(&a, &b)| {
                let (sym, s) = a.mul(b);
                sign = sign.mul(s);
                sym
            })
            .collect();
        Ok(PauliWord { sign, symbols })
    }

    /// Degree in `G`: factor `s0` contributes nothing, `s1` the generator
    /// `a_i`, `s2` the generator `b_i`, `s3` the product `a_i b_i`.  The
    /// `a0` bit is always zero here.
    pub fn degree(&self) -> GroupElement {
        let len = 2 * self.q() + 1;
        let mut bits = 0u32;
        for (i, sym) in self.symbols.iter().enumerate() {
            // a_{i+1} sits at bit 2i+1 and is set by the diagonal part,
            // b_{i+1} at bit 2i+2 by the swap part.
            bits |= (sym.z_bit() as u32) << (2 * i + 1);
            bits |= (sym.x_bit() as u32) << (2 * i + 2);
        }
        GroupElement::from_bits(bits, len)
    }

    pub fn sigma3_count(&self) -> usize {
        self.symbols.iter().filter(|&&s| s == Sigma::S3).count()
    }

    /// Transpose as a signed word: symbols are unchanged and the sign flips
    /// iff the number of `s3` factors is odd.
    pub fn transpose(&self) -> PauliWord {
        let sign = if self.sigma3_count() % 2 == 1 {
            self.sign.flip()
        } else {
            self.sign
        };
        PauliWord {
            sign,
            symbols: self.symbols.clone(),
        }
    }

    /// True iff the underlying matrix is symmetric, i.e. the number of `s3`
    /// factors is even.  (An odd count gives a skew-symmetric matrix.)
    pub fn is_symmetric(&self) -> bool {
        self.sigma3_count() % 2 == 0
    }

    /// Kronecker realization as a `2^q x 2^q` integer matrix with entries
    /// in `{-1, 0, 1}`.
    pub fn to_matrix(&self) -> IntMatrix {
        let mut m = self.symbols[0].matrix();
        for sym in &self.symbols[1..] {
            m = m.kron(&sym.matrix());
        }
        if self.sign == Sign::Minus {
            m = m.scale_i64(-1);
        }
        m
    }

    /// All `4^q` sign-`+` words of length `q`, ordered by reading the symbol
    /// sequence as a base-4 number (first factor most significant).
    pub fn enumerate(q: usize) -> Vec<PauliWord> {
        assert!(q >= 1 && q <= 8);
        let n = 1usize << (2 * q);
        (0..n)
            .map(|code| {
                let symbols = (0..q)
                    .map(|i| {
                        let shift = 2 * (q - 1 - i);
                        Sigma::from_index(((code >> shift) & 3) as u8).unwrap()
                    })
                    .collect();
                PauliWord::new(Sign::Plus, symbols)
            })
            .collect()
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sign)?;
        for sym in &self.symbols {
            write!(f, "s{}", sym.index())?;
        }
        Ok(())
    }
}

impl FromStr for PauliWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<PauliWord> {
        let bad = || Error::Parse(format!("bad word {s:?}"));
        let mut chars = s.chars();
        let sign = match chars.next() {
            Some('+') => Sign::Plus,
            Some('-') => Sign::Minus,
            _ => return Err(bad()),
        };
        let mut symbols = Vec::new();
        loop {
            match chars.next() {
                None => break,
                Some('s') => {
                    let d = chars.next().and_then(|c| c.to_digit(10)).ok_or_else(bad)?;
                    symbols.push(Sigma::from_index(d as u8).ok_or_else(bad)?);
                }
                Some(_) => return Err(bad()),
            }
        }
        if symbols.is_empty() {
            return Err(bad());
        }
        Ok(PauliWord::new(sign, symbols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ge(bits: u32, len: usize) -> GroupElement {
        GroupElement::from_bits(bits, len)
    }

    #[test]
    fn group_identity_and_self_inverse() {
        let e = GroupElement::identity(3);
        assert_eq!(e.mul(&e).unwrap(), e);
        let g = ge(0b101, 3);
        assert_eq!(g.mul(&g).unwrap(), e);
    }

    #[test]
    fn group_distinct_generators_multiply_freely() {
        let len = 3;
        let a1 = GroupElement::gen_a(1, len);
        let b1 = GroupElement::gen_b(1, len);
        let prod = a1.mul(&b1).unwrap();
        assert!(prod.bit(1) && prod.bit(2) && !prod.bit(0));
    }

    #[test]
    fn group_length_mismatch_is_an_error() {
        let g = GroupElement::identity(3);
        let h = GroupElement::identity(5);
        assert!(matches!(g.mul(&h), Err(Error::Dimension(_))));
    }

    #[test]
    fn hex_round_trip_and_width() {
        assert_eq!(ge(0b111, 3).to_hex(), "7");
        assert_eq!(ge(0b10011, 5).to_hex(), "13");
        assert_eq!(ge(0, 9).to_hex(), "000");
        let g = GroupElement::from_hex("13", 5).unwrap();
        assert_eq!(g, ge(0b10011, 5));
        assert!(GroupElement::from_hex("20", 5).is_err());
    }

    #[test]
    fn word_identity_acts_trivially() {
        let id = PauliWord::identity(1);
        let w = PauliWord::new(Sign::Plus, vec![Sigma::S2]);
        assert_eq!(id.mul(&w).unwrap(), w);
        assert_eq!(w.mul(&id).unwrap(), w);
    }

    #[test]
    fn single_factor_products_match_2x2_matrix_products() {
        // Direct oracle: multiply the 2x2 realizations.
        for &a in &Sigma::ALL {
            for &b in &Sigma::ALL {
                let u = PauliWord::new(Sign::Plus, vec![a]);
                let v = PauliWord::new(Sign::Plus, vec![b]);
                let prod = u.mul(&v).unwrap();
                let expect = a.matrix().mul(&b.matrix()).unwrap();
                assert_eq!(prod.to_matrix(), expect, "{a:?} * {b:?}");
            }
        }
    }

    #[test]
    fn named_products() {
        let s1 = PauliWord::new(Sign::Plus, vec![Sigma::S1]);
        let s2 = PauliWord::new(Sign::Plus, vec![Sigma::S2]);
        let s3 = PauliWord::new(Sign::Plus, vec![Sigma::S3]);
        assert_eq!(s1.mul(&s2).unwrap(), s3);
        assert_eq!(s2.mul(&s3).unwrap(), s1.with_sign(Sign::Minus));
    }

    #[test]
    fn word_length_mismatch_is_an_error() {
        let u = PauliWord::identity(1);
        let v = PauliWord::identity(2);
        assert!(matches!(u.mul(&v), Err(Error::Dimension(_))));
    }

    #[test]
    fn degrees_of_generators() {
        let all0 = PauliWord::identity(2);
        assert!(all0.degree().is_identity());
        let s1 = PauliWord::new(Sign::Plus, vec![Sigma::S1]);
        assert_eq!(s1.degree(), GroupElement::gen_a(1, 3));
        // q = 2: s1 (x) s2 has degree a1 * b2.
        let w = PauliWord::new(Sign::Plus, vec![Sigma::S1, Sigma::S2]);
        let expect = GroupElement::gen_a(1, 5)
            .mul(&GroupElement::gen_b(2, 5))
            .unwrap();
        assert_eq!(w.degree(), expect);
    }

    #[test]
    fn degree_is_a_homomorphism_exhaustively_for_small_q() {
        for q in 1..=2 {
            for u in PauliWord::enumerate(q) {
                for v in PauliWord::enumerate(q) {
                    let prod = u.mul(&v).unwrap();
                    let expect = u.degree().mul(&v.degree()).unwrap();
                    assert_eq!(prod.degree(), expect);
                }
            }
        }
    }

    #[test]
    fn degree_map_is_a_bijection_on_plus_words() {
        for q in 1..=3 {
            let mut degrees: Vec<u32> = PauliWord::enumerate(q)
                .iter()
                .map(|w| w.degree().value())
                .collect();
            degrees.sort_unstable();
            degrees.dedup();
            assert_eq!(degrees.len(), 1 << (2 * q));
        }
    }

    #[test]
    fn transpose_tracks_sigma3_parity() {
        let id = PauliWord::identity(1);
        assert!(id.is_symmetric());
        let s3 = PauliWord::new(Sign::Plus, vec![Sigma::S3]);
        assert!(!s3.is_symmetric());
        assert_eq!(s3.transpose().sign(), Sign::Minus);
        let s33 = PauliWord::new(Sign::Plus, vec![Sigma::S3, Sigma::S3]);
        assert!(s33.is_symmetric());
        // Kronecker transpose oracle on the 4x4 realization.
        assert_eq!(s33.transpose().to_matrix(), s33.to_matrix().transpose());
    }

    #[test]
    fn matrix_realizations() {
        let s0 = PauliWord::identity(1);
        assert_eq!(s0.to_matrix(), IntMatrix::identity(2));
        let s3 = PauliWord::new(Sign::Plus, vec![Sigma::S3]);
        assert_eq!(
            s3.to_matrix(),
            IntMatrix::from_i64_rows(&[vec![0, 1], vec![-1, 0]])
        );
        let w = PauliWord::new(Sign::Plus, vec![Sigma::S1, Sigma::S1]);
        assert_eq!(
            w.to_matrix(),
            IntMatrix::from_i64_rows(&[
                vec![1, 0, 0, 0],
                vec![0, -1, 0, 0],
                vec![0, 0, -1, 0],
                vec![0, 0, 0, 1],
            ])
        );
    }

    #[test]
    fn word_serialization_round_trip() {
        let w = PauliWord::new(Sign::Minus, vec![Sigma::S3, Sigma::S0]);
        assert_eq!(w.to_string(), "-s3s0");
        assert_eq!("-s3s0".parse::<PauliWord>().unwrap(), w);
        let v = PauliWord::new(Sign::Plus, vec![Sigma::S1, Sigma::S2]);
        assert_eq!(v.to_string(), "+s1s2");
        assert_eq!("+s1s2".parse::<PauliWord>().unwrap(), v);
        assert!("s1".parse::<PauliWord>().is_err());
        assert!("+s4".parse::<PauliWord>().is_err());
        assert!("+".parse::<PauliWord>().is_err());
    }
}
