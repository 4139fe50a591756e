use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Exponent of a letter. `Plus` sorts before `Minus`, so `s_i` precedes
/// `s_i⁻¹` in the enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// The letter `s_index^sign`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedGenerator {
    pub index: u32,
    pub sign: Sign,
}

impl SignedGenerator {
    pub const fn new(index: u32, sign: Sign) -> Self {
        SignedGenerator { index, sign }
    }

    pub const fn pos(index: u32) -> Self {
        SignedGenerator::new(index, Sign::Plus)
    }

    pub const fn neg(index: u32) -> Self {
        SignedGenerator::new(index, Sign::Minus)
    }

    pub fn inverse(self) -> Self {
        SignedGenerator::new(self.index, self.sign.flip())
    }

    /// Signed integer form, `+i` or `-i`.
    pub fn to_signed(self) -> i64 {
        i64::from(self.index) * i64::from(self.sign.as_i8())
    }
}

impl fmt::Display for SignedGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign == Sign::Plus { '+' } else { '-' };
        write!(f, "{s}{}", self.index)
    }
}

impl FromStr for SignedGenerator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (sign, digits) = match s.as_bytes().first() {
            Some(b'+') => (Sign::Plus, &s[1..]),
            Some(b'-') => (Sign::Minus, &s[1..]),
            _ => return Err(format!("letter `{s}` must start with + or -")),
        };
        let index: u32 = digits
            .parse()
            .map_err(|_| format!("bad generator index in `{s}`"))?;
        if index == 0 {
            return Err(format!("generator index must be positive in `{s}`"));
        }
        Ok(SignedGenerator::new(index, sign))
    }
}

pub fn is_cyclically_reduced(a: SignedGenerator, b: SignedGenerator, c: SignedGenerator) -> bool {
    b != a.inverse() && c != b.inverse() && a != c.inverse()
}

/// A cyclically reduced word of length three. Identity is positional:
/// `s1 s2 s3` and `s2 s3 s1` are different words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word3([SignedGenerator; 3]);

impl Word3 {
    pub fn new(a: SignedGenerator, b: SignedGenerator, c: SignedGenerator) -> Result<Self> {
        if is_cyclically_reduced(a, b, c) {
            Ok(Word3([a, b, c]))
        } else {
            Err(Error::NotCyclicallyReduced(format!("{a} {b} {c}")))
        }
    }

    /// Builds a word from signed integers, e.g. `[1, -2, 3]`.
    pub fn from_signed(letters: [i32; 3]) -> Result<Self> {
        let conv = |v: i32| -> Result<SignedGenerator> {
            match v {
                0 => Err(Error::InvalidParameter(
                    "letter 0 is not a generator".into(),
                )),
                v if v > 0 => Ok(SignedGenerator::pos(v.unsigned_abs())),
                v => Ok(SignedGenerator::neg(v.unsigned_abs())),
            }
        };
        Word3::new(conv(letters[0])?, conv(letters[1])?, conv(letters[2])?)
    }

    pub(crate) fn from_letters_unchecked(letters: [SignedGenerator; 3]) -> Self {
        debug_assert!(is_cyclically_reduced(letters[0], letters[1], letters[2]));
        Word3(letters)
    }

    pub fn letters(&self) -> &[SignedGenerator; 3] {
        &self.0
    }

    pub fn indices(&self) -> [u32; 3] {
        [self.0[0].index, self.0[1].index, self.0[2].index]
    }

    pub fn max_index(&self) -> u32 {
        self.indices().into_iter().max().unwrap_or(0)
    }

    pub fn contains_generator(&self, index: u32) -> bool {
        self.0.iter().any(|l| l.index == index)
    }

    /// The formal inverse `c⁻¹ b⁻¹ a⁻¹`.
    pub fn inverse(&self) -> Word3 {
        let [a, b, c] = self.0;
        Word3([c.inverse(), b.inverse(), a.inverse()])
    }
}

impl fmt::Display for Word3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.0[0], self.0[1], self.0[2])
    }
}

fn letters(n: u32) -> impl Iterator<Item = SignedGenerator> + Clone {
    (1..=n).flat_map(|i| [SignedGenerator::pos(i), SignedGenerator::neg(i)])
}

/// All cyclically reduced length-3 words over `n` generators, in
/// lexicographic order with letters ordered `s1 < s1⁻¹ < s2 < s2⁻¹ < …`.
pub fn enumerate_w3(n: u32) -> Result<Vec<Word3>> {
    if n == 0 {
        return Err(Error::ZeroGenerators(n));
    }
    let mut out = Vec::with_capacity(count_w3(n)? as usize);
    for a in letters(n) {
        for b in letters(n) {
            if b == a.inverse() {
                continue;
            }
            for c in letters(n) {
                if is_cyclically_reduced(a, b, c) {
                    out.push(Word3([a, b, c]));
                }
            }
        }
    }
    Ok(out)
}

/// `|W_3| = (2n − 1)³ + 1`.
///
/// `W_3` is the set of closed walks of length three in the graph on the `2n`
/// letters where each letter is joined to everything except its inverse.
/// The adjacency matrix `J − P` (P the inversion involution) has spectrum
/// `{2n − 1, −1 (n − 1 times), +1 (n times)}`, and the trace of its cube is
/// the closed form above.
pub fn count_w3(n: u32) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroGenerators(n));
    }
    let m = 2 * u64::from(n) - 1;
    Ok(m * m * m + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(l: [i32; 3]) -> Word3 {
        Word3::from_signed(l).unwrap()
    }

    #[test]
    fn letter_inverse() {
        assert_eq!(SignedGenerator::pos(1).inverse(), SignedGenerator::neg(1));
        assert_eq!(SignedGenerator::neg(7).inverse(), SignedGenerator::pos(7));
        let l = SignedGenerator::pos(3);
        assert_eq!(l.inverse().inverse(), l);
    }

    #[test]
    fn reduction_checks() {
        let s = SignedGenerator::pos;
        let t = SignedGenerator::neg;
        assert!(!is_cyclically_reduced(s(1), t(1), s(2)));
        assert!(!is_cyclically_reduced(s(1), s(2), t(1)));
        assert!(is_cyclically_reduced(s(1), s(1), s(1)));
        assert!(Word3::from_signed([1, -1, 2]).is_err());
    }

    #[test]
    fn word_inverse_examples() {
        assert_eq!(w([1, 2, 3]).inverse(), w([-3, -2, -1]));
        assert_eq!(w([1, 1, 2]).inverse(), w([-2, -1, -1]));
        for word in enumerate_w3(4).unwrap() {
            let inv = word.inverse();
            let [a, b, c] = *inv.letters();
            assert!(is_cyclically_reduced(a, b, c));
            assert_eq!(inv.inverse(), word);
        }
    }

    /// Independent oracle: all `(2n)³` letter triples filtered by the
    /// reduction test, no closed form involved.
    fn brute_count(n: u32) -> u64 {
        let ls: Vec<_> = letters(n).collect();
        let mut count = 0;
        for &a in &ls {
            for &b in &ls {
                for &c in &ls {
                    if b != a.inverse() && c != b.inverse() && a != c.inverse() {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(
            enumerate_w3(1).unwrap(),
            vec![w([1, 1, 1]), w([-1, -1, -1])]
        );
        assert_eq!(enumerate_w3(2).unwrap().len(), 28);
        assert_eq!(brute_count(5), 730);
        assert!(matches!(enumerate_w3(0), Err(Error::ZeroGenerators(0))));
        assert!(count_w3(0).is_err());
    }

    #[test]
    fn enumeration_sorted_unique_and_reduced() {
        let ws = enumerate_w3(3).unwrap();
        assert!(ws.windows(2).all(|p| p[0] < p[1]));
        for x in &ws {
            let [a, b, c] = *x.letters();
            assert!(is_cyclically_reduced(a, b, c));
        }
    }

    #[test]
    fn closed_form_matches_oracle_and_bracket() {
        for n in 1..=6u32 {
            let c = count_w3(n).unwrap();
            assert_eq!(c, brute_count(n), "n={n}");
            assert_eq!(c, enumerate_w3(n).unwrap().len() as u64);
        }
        assert_eq!(count_w3(1).unwrap(), 2);
        assert_eq!(count_w3(2).unwrap(), 28);
        assert_eq!(count_w3(5).unwrap(), 730);
        for n in 1..=2000u64 {
            let c = count_w3(n as u32).unwrap();
            assert!(2 * n * (2 * n - 1) * (2 * n - 2) <= c && c <= 8 * n * n * n);
        }
    }

    #[test]
    fn letter_text_round_trip() {
        for s in ["+1", "-12", "+300"] {
            assert_eq!(s.parse::<SignedGenerator>().unwrap().to_string(), s);
        }
        assert!("1".parse::<SignedGenerator>().is_err());
        assert!("+0".parse::<SignedGenerator>().is_err());
        assert!("-x".parse::<SignedGenerator>().is_err());
    }
}
