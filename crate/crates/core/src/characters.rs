//! Character-level computations: Weyl characters via Freudenthal's
//! recursion, exact dimensions, tensor products, the truncation set Gamma
//! and the filtration-section listing.
//!
//! Characters are stored sparsely on dominant orbit representatives; orbit
//! expansion is on demand. All multiplicities are exact big integers.

use std::collections::BTreeMap;

use num::{BigRational, BigUint, One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::lattice::{RootDatum, Weight};

/// |Gamma| for the cutoff 22, frozen as a regression constant after a
/// brute-force count of the solutions of 2a + 4b + 3c + 2d <= 21.
pub const GAMMA_COUNT: usize = 445;

/// Strict upper bound on the highest-short-coroot pairing over Gamma.
pub const GAMMA_CUTOFF: i64 = 22;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CharacterError {
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("level r = {0} must be odd here")]
    EvenLevel(u32),
    #[error("level r = {0} must be positive")]
    ZeroLevel(u32),
}

/// A W-invariant character with finite dominant support, e.g. the
/// character of an induced module H0(nu) or a tensor product of such.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    highest: Weight,
    table: BTreeMap<Weight, BigUint>,
    dim: BigUint,
}

impl Character {
    pub fn trivial() -> Character {
        let mut table = BTreeMap::new();
        table.insert(Weight::ZERO, BigUint::one());
        Character {
            highest: Weight::ZERO,
            table,
            dim: BigUint::one(),
        }
    }

    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    pub fn dim(&self) -> &BigUint {
        &self.dim
    }

    /// Multiplicities on dominant orbit representatives, lexicographically
    /// keyed.
    pub fn dominant_multiplicities(&self) -> &BTreeMap<Weight, BigUint> {
        &self.table
    }

    /// Multiplicity of an arbitrary weight, via its dominant representative.
    pub fn multiplicity(&self, datum: &RootDatum, lam: &Weight) -> BigUint {
        let rep = datum.dominant_rep(lam);
        self.table.get(&rep).cloned().unwrap_or_else(BigUint::zero)
    }

    /// The full weight multiset, orbit-expanded and sorted.
    pub fn full_weights(&self, datum: &RootDatum) -> Vec<(Weight, BigUint)> {
        let mut out = Vec::new();
        for (rep, mult) in &self.table {
            for w in datum.weyl_orbit(rep) {
                out.push((w, mult.clone()));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

/// Freudenthal evaluator memoized on dominant representatives. Computes
/// single multiplicities without materializing the whole support, so
/// queries against characters of large highest weight stay proportional to
/// the part of the weight poset they actually touch.
pub struct LazyCharacter<'a> {
    datum: &'a RootDatum,
    top: Weight,
    top_norm: i128,
    memo: BTreeMap<Weight, BigUint>,
}

impl<'a> LazyCharacter<'a> {
    pub fn new(datum: &'a RootDatum, top: Weight) -> Result<LazyCharacter<'a>, CharacterError> {
        if !top.is_dominant() {
            return Err(CharacterError::NotDominant(top));
        }
        let top_rho = top.plus(&Weight::rho());
        Ok(LazyCharacter {
            datum,
            top,
            top_norm: datum.form(&top_rho, &top_rho),
            memo: BTreeMap::new(),
        })
    }

    pub fn top(&self) -> &Weight {
        &self.top
    }

    /// Multiplicity of lam in the Weyl character of the top weight.
    pub fn multiplicity(&mut self, lam: &Weight) -> BigUint {
        let rep = self.datum.dominant_rep(lam);
        self.mult_dominant(&rep)
    }

    fn mult_dominant(&mut self, mu: &Weight) -> BigUint {
        if *mu == self.top {
            return BigUint::one();
        }
        if !self.datum.dominance_leq(mu, &self.top) {
            return BigUint::zero();
        }
        if let Some(m) = self.memo.get(mu) {
            return m.clone();
        }
        // Freudenthal: ((top+rho)^2 - (mu+rho)^2) m(mu)
        //            = 2 sum_{alpha>0} sum_{k>=1} (mu + k alpha, alpha) m(mu + k alpha).
        // Every recursive query is strictly higher in dominance, so the
        // recursion bottoms out at the top weight.
        let mut numerator = BigUint::zero();
        let positives: Vec<Weight> = self
            .datum
            .positive_roots()
            .map(|r| r.weight_coords)
            .collect();
        for alpha in &positives {
            for k in 1.. {
                let x = mu.plus(&alpha.scaled(k));
                let m = self.mult_dominant(&self.datum.dominant_rep(&x));
                if m.is_zero() {
                    break; // weights of one alpha-string are contiguous
                }
                let contrib = self.datum.form(&x, alpha);
                let contrib = u128::try_from(contrib).expect("string form value is positive");
                numerator += m * BigUint::from(contrib);
            }
        }
        let mu_rho = mu.plus(&Weight::rho());
        let denom = self.top_norm - self.datum.form(&mu_rho, &mu_rho);
        let denom = u128::try_from(denom).expect("norm gap is positive below the top weight");
        let doubled = numerator * 2u32;
        let (q, rem) = num::Integer::div_rem(&doubled, &BigUint::from(denom));
        assert!(rem.is_zero(), "Freudenthal division must be exact");
        assert!(!q.is_zero(), "dominant weights under the top have positive multiplicity");
        self.memo.insert(*mu, q.clone());
        q
    }
}

/// Dominant weights mu with <mu, alpha0^vee> <= budget, optionally cut to
/// mu <= top in dominance. The pairing of every positive root against
/// alpha0^vee is nonnegative, so the budget box contains every dominant
/// weight below top.
pub(crate) fn budget_box(datum: &RootDatum, budget: i64, below: Option<&Weight>) -> Vec<Weight> {
    let mut out = Vec::new();
    let p = {
        let mut v = [0i64; 4];
        for (i, vi) in v.iter_mut().enumerate() {
            *vi = datum.alpha0_pairing(&Weight::fundamental(i + 1));
        }
        v
    };
    for c1 in 0..=budget / p[0] {
        let b1 = budget - c1 * p[0];
        for c2 in 0..=b1 / p[1] {
            let b2 = b1 - c2 * p[1];
            for c3 in 0..=b2 / p[2] {
                let b3 = b2 - c3 * p[2];
                for c4 in 0..=b3 / p[3] {
                    let mu = Weight([c1, c2, c3, c4]);
                    if below.map_or(true, |top| datum.dominance_leq(&mu, top)) {
                        out.push(mu);
                    }
                }
            }
        }
    }
    out
}

/// The Weyl character of highest weight top via Freudenthal's recursion.
pub fn weyl_character(datum: &RootDatum, top: &Weight) -> Result<Character, CharacterError> {
    if !top.is_dominant() {
        return Err(CharacterError::NotDominant(*top));
    }
    let support = budget_box(datum, datum.alpha0_pairing(top), Some(top));
    let mut lazy = LazyCharacter::new(datum, *top)?;
    let mut table = BTreeMap::new();
    let mut dim = BigUint::zero();
    for mu in support {
        let m = lazy.mult_dominant(&mu);
        assert!(!m.is_zero(), "every dominant weight below the top occurs");
        dim += &m * BigUint::from(datum.orbit_size(&mu));
        table.insert(mu, m);
    }
    debug_assert_eq!(dim, weyl_dim(datum, top).expect("top is dominant"));
    Ok(Character {
        highest: *top,
        table,
        dim,
    })
}

/// The Weyl dimension formula, evaluated in exact rational arithmetic.
pub fn weyl_dim(datum: &RootDatum, top: &Weight) -> Result<BigUint, CharacterError> {
    if !top.is_dominant() {
        return Err(CharacterError::NotDominant(*top));
    }
    let rho = Weight::rho();
    let shifted = top.plus(&rho);
    let mut acc = BigRational::one();
    for root in datum.positive_roots() {
        let num: i128 = (0..4).map(|i| shifted.0[i] as i128 * root.coroot[i] as i128).sum();
        let den: i128 = (0..4).map(|i| rho.0[i] as i128 * root.coroot[i] as i128).sum();
        acc *= BigRational::new(num.into(), den.into());
    }
    assert!(acc.is_integer(), "Weyl dimension is an integer");
    let dim = acc.to_integer();
    Ok(dim.to_biguint().expect("dimension is positive"))
}

/// Pointwise convolution of two characters. Dimension multiplies; the
/// result is W-invariant, so only dominant accumulation points are kept.
pub fn tensor(datum: &RootDatum, a: &Character, b: &Character) -> Character {
    let full_a = a.full_weights(datum);
    let full_b = b.full_weights(datum);
    let mut acc: BTreeMap<Weight, BigUint> = BTreeMap::new();
    for (wa, ma) in &full_a {
        for (wb, mb) in &full_b {
            let w = wa.plus(wb);
            if w.is_dominant() {
                *acc.entry(w).or_insert_with(BigUint::zero) += ma * mb;
            }
        }
    }
    let dim = a.dim() * b.dim();
    let check: BigUint = acc
        .iter()
        .map(|(w, m)| m * BigUint::from(datum.orbit_size(w)))
        .sum();
    assert_eq!(check, dim, "tensor dimension must multiply");
    let highest = a.highest.plus(&b.highest);
    assert_eq!(acc.get(&highest), Some(&BigUint::one()));
    Character {
        highest,
        table: acc,
        dim,
    }
}

/// Multiplicity of target in the product of the Weyl characters of small
/// and big, without materializing the product: expands the small factor
/// fully and queries the big factor lazily.
pub fn tensor_multiplicity(
    datum: &RootDatum,
    small: &Weight,
    big: &Weight,
    target: &Weight,
) -> Result<BigUint, CharacterError> {
    let small_ch = weyl_character(datum, small)?;
    let mut lazy = LazyCharacter::new(datum, *big)?;
    let mut acc = BigUint::zero();
    for (w, m) in small_ch.full_weights(datum) {
        let rest = target.minus(&w);
        let mb = lazy.multiplicity(&rest);
        if !mb.is_zero() {
            acc += m * mb;
        }
    }
    Ok(acc)
}

/// The truncation set Gamma: dominant nu with <nu, alpha0^vee> < 22, in a
/// dominance-compatible total order (Kahn's algorithm over the dominance
/// relation, lexicographic tie-break).
pub fn gamma_set(datum: &RootDatum) -> Vec<Weight> {
    let members = budget_box(datum, GAMMA_CUTOFF - 1, None);
    assert_eq!(members.len(), GAMMA_COUNT, "frozen |Gamma| regression");
    // Plain lexicographic order is not dominance-compatible here (simple
    // root steps can raise a later coordinate while lowering an earlier
    // one), so a genuine topological sort is required.
    let n = members.len();
    let mut succs: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && datum.dominance_leq(&members[i], &members[j]) {
                succs[i].push(j);
                indegree[j] += 1;
            }
        }
    }
    let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<(Weight, usize)>> =
        std::collections::BinaryHeap::new();
    for (i, &d) in indegree.iter().enumerate() {
        if d == 0 {
            heap.push(std::cmp::Reverse((members[i], i)));
        }
    }
    let mut out = Vec::with_capacity(n);
    while let Some(std::cmp::Reverse((w, i))) = heap.pop() {
        out.push(w);
        for &j in &succs[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                heap.push(std::cmp::Reverse((members[j], j)));
            }
        }
    }
    assert_eq!(out.len(), n, "dominance is acyclic");
    assert_eq!(out[0], Weight::ZERO);
    out
}

/// Gamma without the zero weight, in gamma_set order.
pub fn gamma_prime(datum: &RootDatum) -> Vec<Weight> {
    gamma_set(datum).into_iter().filter(|w| !w.is_zero()).collect()
}

/// One filtration section per element of Gamma: the twisted tensor factor
/// pattern contributes dimension dim(lam) * dim(lam*), and lam* = lam here.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionLabel {
    pub lam: Weight,
    pub twist_level: u32,
    /// dim H0(lam) * dim H0(lam*), as a decimal string.
    pub dimension: String,
}

pub fn filtration_sections(
    datum: &RootDatum,
    r: u32,
) -> Result<Vec<SectionLabel>, CharacterError> {
    if r == 0 {
        return Err(CharacterError::ZeroLevel(r));
    }
    if r % 2 == 0 {
        return Err(CharacterError::EvenLevel(r));
    }
    let mut out = Vec::with_capacity(GAMMA_COUNT);
    for lam in gamma_set(datum) {
        let dual = datum.dual_weight(&lam);
        assert_eq!(dual, lam, "-w0 acts trivially on F4 weights");
        let d = weyl_dim(datum, &lam)?;
        let d_dual = weyl_dim(datum, &dual)?;
        out.push(SectionLabel {
            lam,
            twist_level: r,
            dimension: (d * d_dual).to_string(),
        });
    }
    Ok(out)
}
