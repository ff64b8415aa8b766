//! The characteristic-2 special isogeny tau of F4 on the weight lattice:
//! restriction sets, tau-adic digits and the Steinberg splitting.
//!
//! Levels are encoded by a single positive integer r: odd r = 2s+1 is the
//! twisted level r/2 (kernel of tau composed with s Frobenius twists), even
//! r = 2t is the classical level t. The special value r = 1 gives the digit
//! alphabet X_{1/2} = {0, w3, w4, w3+w4}.

use std::fmt;
use std::str::FromStr;

use num::BigUint;
use thiserror::Error;

use crate::lattice::{Weight, WeightParseError, RANK};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IsogenyError {
    #[error("level r = {0} must be odd here")]
    EvenLevel(u32),
    #[error("level r = {0} must be positive")]
    ZeroLevel(u32),
    #[error("weight {weight} is not restricted at level r = {level}")]
    NotRestricted { weight: Weight, level: u32 },
    #[error("digit {index} = {digit} is outside the level-1 alphabet")]
    MalformedDigit { index: usize, digit: Weight },
    #[error("digit sequences have odd length, got {0}")]
    EvenDigitCount(usize),
    #[error("{0}")]
    DigitParse(String),
    #[error("t = {t} is outside 1..={max} for level r = {r}")]
    SplitRange { t: u32, r: u32, max: u32 },
    #[error("level r = {r} has {count} restricted weights, over the cap {cap}; use the closed-form count")]
    CapExceeded { r: u32, count: BigUint, cap: u64 },
}

/// The isogeny's action on the weight lattice, as an integer matrix in
/// fundamental-weight coordinates. The canonical instance satisfies
/// tau*(tau*(x)) = 2x and swaps the short and long nodes with the doubling
/// on the long side: w3 -> w2, w4 -> w1, w1 -> 2 w4, w2 -> 2 w3.
#[derive(Clone, Debug)]
pub struct Isogeny {
    /// `mat[k]` is row k: tau*(lam)_k = sum_i mat[k][i] * lam_i.
    mat: [[i64; RANK]; RANK],
}

impl Isogeny {
    /// The special isogeny of F4 in characteristic 2. Construction
    /// self-checks the orientation: tau*^2 = 2 and the digit bijection at
    /// levels 1 and 3 (the opposite orientation fails the 4^r count).
    pub fn f4_char2() -> Isogeny {
        let iso = Isogeny {
            mat: [
                [0, 0, 0, 1],
                [0, 0, 1, 0],
                [0, 2, 0, 0],
                [2, 0, 0, 0],
            ],
        };
        assert!(iso.tau_square_is_doubling(), "tau*^2 must equal 2");
        for r in [1u32, 3] {
            assert!(
                iso.digit_bijection_holds(r),
                "tau-adic digits must biject X at level {r}"
            );
        }
        iso
    }

    /// Unvalidated constructor. Exists so the self-test battery can be run
    /// against a deliberately corrupted orientation as a negative control.
    #[doc(hidden)]
    pub fn from_matrix_unchecked(mat: [[i64; RANK]; RANK]) -> Isogeny {
        Isogeny { mat }
    }

    /// The corrupted orientation used by the negative-control hook: the
    /// node swap with the doubling moved to the short side.
    #[doc(hidden)]
    pub fn corrupted_orientation() -> Isogeny {
        Isogeny {
            mat: [
                [0, 0, 0, 2],
                [0, 0, 2, 0],
                [0, 1, 0, 0],
                [1, 0, 0, 0],
            ],
        }
    }

    pub fn tau_square_is_doubling(&self) -> bool {
        (0..RANK).all(|i| {
            let e = {
                let mut c = [0i64; RANK];
                c[i] = 1;
                Weight(c)
            };
            self.tau_star(&self.tau_star(&e)) == e.scaled(2)
        })
    }

    fn digit_bijection_holds(&self, r: u32) -> bool {
        let weights = match self.enumerate_restricted(r, 1 << 20) {
            Ok(w) => w,
            Err(_) => return false,
        };
        if BigUint::from(weights.len()) != restricted_count(r) {
            return false;
        }
        weights.iter().all(|&lam| {
            self.digits(r, &lam)
                .map(|d| self.assemble(&d) == lam)
                .unwrap_or(false)
        })
    }

    /// tau* applied to a weight.
    pub fn tau_star(&self, lam: &Weight) -> Weight {
        let mut out = [0i64; RANK];
        for k in 0..RANK {
            let mut acc: i128 = 0;
            for i in 0..RANK {
                acc += self.mat[k][i] as i128 * lam.0[i] as i128;
            }
            out[k] = i64::try_from(acc).expect("weight coordinate overflow");
        }
        Weight(out)
    }

    /// sigma* for sigma at level r/2: odd r = 2s+1 gives 2^s tau*, even
    /// r = 2t gives the plain Frobenius power 2^t.
    pub fn sigma_star(&self, r: u32, lam: &Weight) -> Weight {
        assert!(r >= 1, "level must be positive");
        if r % 2 == 1 {
            let s = (r - 1) / 2;
            let factor = 2i64.checked_pow(s).expect("twist factor overflow");
            self.tau_star(lam).scaled(factor)
        } else {
            let factor = 2i64.checked_pow(r / 2).expect("twist factor overflow");
            lam.scaled(factor)
        }
    }

    /// Membership in the restricted set at level r/2. Odd r = 2s+1: short
    /// coordinates below 2^{s+1}, long below 2^s. Even r = 2t: all below
    /// 2^t. Level 0 admits only the zero weight.
    pub fn is_restricted(&self, r: u32, lam: &Weight) -> bool {
        let (long_bound, short_bound) = level_bounds(r);
        let [c1, c2, c3, c4] = lam.0;
        (0..long_bound).contains(&c1)
            && (0..long_bound).contains(&c2)
            && (0..short_bound).contains(&c3)
            && (0..short_bound).contains(&c4)
    }

    /// The tau-adic digits of a restricted weight at odd level r:
    /// lam = sum_{i<r} tau*^i d_i with every d_i in the level-1 alphabet.
    pub fn digits(&self, r: u32, lam: &Weight) -> Result<TauDigits, IsogenyError> {
        if r == 0 {
            return Err(IsogenyError::ZeroLevel(r));
        }
        if r % 2 == 0 {
            return Err(IsogenyError::EvenLevel(r));
        }
        if !self.is_restricted(r, lam) {
            return Err(IsogenyError::NotRestricted {
                weight: *lam,
                level: r,
            });
        }
        let mut digits = Vec::with_capacity(r as usize);
        let mut cur = lam.0;
        for _ in 0..r {
            let d = Weight([0, 0, cur[2] & 1, cur[3] & 1]);
            digits.push(d);
            // Invert tau* on the remainder: the cleared short coordinates
            // halve into the long slots of the preimage.
            cur = [(cur[3] - d.0[3]) / 2, (cur[2] - d.0[2]) / 2, cur[1], cur[0]];
        }
        debug_assert_eq!(cur, [0; RANK], "restricted weights exhaust in r steps");
        Ok(TauDigits { digits })
    }

    /// Reassemble a digit sequence: sum_{i<r} tau*^i d_i, by Horner's rule.
    pub fn assemble(&self, d: &TauDigits) -> Weight {
        let mut acc = Weight::ZERO;
        for digit in d.digits.iter().rev() {
            acc = digit.plus(&self.tau_star(&acc));
        }
        acc
    }

    /// Cyclic digit rotation composed with reassembly.
    pub fn tilde(&self, r: u32, lam: &Weight, n: i64) -> Result<Weight, IsogenyError> {
        let d = self.digits(r, lam)?;
        Ok(self.assemble(&d.rotate(n)))
    }

    /// Steinberg splitting at 2^t: lam = lam0 + 2^t lam1 with lam0 at
    /// classical level t and lam1 at level r - 2t.
    pub fn steinberg_split(
        &self,
        r: u32,
        t: u32,
        lam: &Weight,
    ) -> Result<(Weight, Weight), IsogenyError> {
        if r == 0 {
            return Err(IsogenyError::ZeroLevel(r));
        }
        let max = if r % 2 == 1 { (r - 1) / 2 } else { r / 2 };
        if t < 1 || t > max {
            return Err(IsogenyError::SplitRange { t, r, max });
        }
        if !self.is_restricted(r, lam) {
            return Err(IsogenyError::NotRestricted {
                weight: *lam,
                level: r,
            });
        }
        let q = 1i64 << t;
        let mut low = [0i64; RANK];
        let mut high = [0i64; RANK];
        for k in 0..RANK {
            low[k] = lam.0[k] % q;
            high[k] = lam.0[k] / q;
        }
        let (lam0, lam1) = (Weight(low), Weight(high));
        debug_assert!(self.is_restricted(2 * t, &lam0));
        debug_assert!(self.is_restricted(r - 2 * t, &lam1));
        Ok((lam0, lam1))
    }

    /// All restricted weights at level r/2, in lexicographic order. Guarded
    /// by a cap since the count grows as 4^r.
    pub fn enumerate_restricted(&self, r: u32, cap: u64) -> Result<Vec<Weight>, IsogenyError> {
        let count = restricted_count(r);
        if count > BigUint::from(cap) {
            return Err(IsogenyError::CapExceeded { r, count, cap });
        }
        let (long_bound, short_bound) = level_bounds(r);
        let mut out = Vec::with_capacity(usize::try_from(&count).unwrap_or(0));
        for c1 in 0..long_bound {
            for c2 in 0..long_bound {
                for c3 in 0..short_bound {
                    for c4 in 0..short_bound {
                        out.push(Weight([c1, c2, c3, c4]));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// (long bound, short bound) for the coordinate boxes at level r/2.
fn level_bounds(r: u32) -> (i64, i64) {
    // Saturate at i64::MAX: boxes beyond 2^62 exceed every representable
    // coordinate anyway.
    fn pow2(e: u32) -> i64 {
        if e >= 63 {
            i64::MAX
        } else {
            1i64 << e
        }
    }
    if r % 2 == 1 {
        let s = (r - 1) / 2;
        (pow2(s), pow2(s + 1))
    } else {
        let t = r / 2;
        (pow2(t), pow2(t))
    }
}

/// |X at level r/2| = 4^r, in closed form.
pub fn restricted_count(r: u32) -> BigUint {
    BigUint::from(4u32).pow(r)
}

/// A tau-adic digit sequence: odd length, every entry in the level-1
/// alphabet (zero long coordinates, short coordinates 0 or 1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TauDigits {
    digits: Vec<Weight>,
}

impl TauDigits {
    pub fn new(digits: Vec<Weight>) -> Result<TauDigits, IsogenyError> {
        if digits.len() % 2 == 0 {
            return Err(IsogenyError::EvenDigitCount(digits.len()));
        }
        for (index, d) in digits.iter().enumerate() {
            let ok = d.0[0] == 0 && d.0[1] == 0 && (0..=1).contains(&d.0[2]) && (0..=1).contains(&d.0[3]);
            if !ok {
                return Err(IsogenyError::MalformedDigit { index, digit: *d });
            }
        }
        Ok(TauDigits { digits })
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length is odd by construction
    }

    pub fn get(&self, i: usize) -> &Weight {
        &self.digits[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Weight> {
        self.digits.iter()
    }

    /// Cyclic rotation: entry i of the result is entry (i - n) mod r of the
    /// input, so a digit at position j moves to position j + n.
    pub fn rotate(&self, n: i64) -> TauDigits {
        let r = self.digits.len() as i64;
        let shift = n.rem_euclid(r);
        let mut digits = Vec::with_capacity(self.digits.len());
        for i in 0..r {
            digits.push(self.digits[(i - shift).rem_euclid(r) as usize]);
        }
        TauDigits { digits }
    }
}

impl fmt::Display for TauDigits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for TauDigits {
    type Err = IsogenyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits: Vec<Weight> = s
            .split(';')
            .map(|p| {
                p.trim()
                    .parse::<Weight>()
                    .map_err(|e: WeightParseError| IsogenyError::DigitParse(e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        TauDigits::new(digits)
    }
}
