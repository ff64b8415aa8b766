//! Exact arithmetic for the F4 weight lattice: root enumeration, coroot
//! pairings, Weyl orbits, dominance order and affine alcove reduction.
//!
//! Weights are written in fundamental-weight coordinates throughout, with
//! the Bourbaki numbering of simple roots: a1, a2 long, a3, a4 short.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};
use thiserror::Error;

pub const RANK: usize = 4;

/// Cartan matrix of F4: `CARTAN[i][j] = <a_i, a_j^v>`, so row i is the
/// expansion of the simple root a_{i+1} in fundamental-weight coordinates.
const CARTAN: [[i64; RANK]; RANK] = [
    [2, -1, 0, 0],
    [-1, 2, -2, 0],
    [0, -1, 2, -1],
    [0, 0, -1, 2],
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("unknown coroot label `{0}`")]
    UnknownCoroot(String),
    #[error("weight {0} is not in the root lattice")]
    NotInRootLattice(Weight),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightParseError {
    #[error("expected {RANK} comma-separated coordinates, got {0}")]
    WrongArity(usize),
    #[error("bad coordinate `{0}`")]
    BadCoordinate(String),
}

/// A weight in fundamental-weight coordinates (c1, c2, c3, c4).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Weight(pub [i64; RANK]);

impl Weight {
    pub const ZERO: Weight = Weight([0; RANK]);

    /// The i-th fundamental weight, 1-indexed as in the numbering above.
    pub fn fundamental(i: usize) -> Weight {
        assert!((1..=RANK).contains(&i), "fundamental weight index out of range");
        let mut c = [0i64; RANK];
        c[i - 1] = 1;
        Weight(c)
    }

    pub fn rho() -> Weight {
        Weight([1; RANK])
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; RANK]
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn plus(&self, other: &Weight) -> Weight {
        let mut c = [0i64; RANK];
        for k in 0..RANK {
            c[k] = self.0[k]
                .checked_add(other.0[k])
                .expect("weight coordinate overflow");
        }
        Weight(c)
    }

    pub fn minus(&self, other: &Weight) -> Weight {
        let mut c = [0i64; RANK];
        for k in 0..RANK {
            c[k] = self.0[k]
                .checked_sub(other.0[k])
                .expect("weight coordinate overflow");
        }
        Weight(c)
    }

    pub fn scaled(&self, factor: i64) -> Weight {
        let mut c = [0i64; RANK];
        for k in 0..RANK {
            c[k] = self.0[k]
                .checked_mul(factor)
                .expect("weight coordinate overflow");
        }
        Weight(c)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl FromStr for Weight {
    type Err = WeightParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != RANK {
            return Err(WeightParseError::WrongArity(parts.len()));
        }
        let mut c = [0i64; RANK];
        for (k, p) in parts.iter().enumerate() {
            c[k] = p
                .trim()
                .parse()
                .map_err(|_| WeightParseError::BadCoordinate(p.to_string()))?;
        }
        Ok(Weight(c))
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Label for the coroots exposed by [`RootDatum::pairing`]: the simple
/// coroots `a1`..`a4` and the coroot `a0` of the highest short root.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CorootLabel {
    Simple(usize),
    HighestShort,
}

impl FromStr for CorootLabel {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "a0" => Ok(CorootLabel::HighestShort),
            "a1" => Ok(CorootLabel::Simple(1)),
            "a2" => Ok(CorootLabel::Simple(2)),
            "a3" => Ok(CorootLabel::Simple(3)),
            "a4" => Ok(CorootLabel::Simple(4)),
            other => Err(LatticeError::UnknownCoroot(other.to_string())),
        }
    }
}

/// A root, carried in both coordinate systems.
#[derive(Clone, Debug)]
pub struct Root {
    /// Coefficients on the simple roots.
    pub root_coords: [i64; RANK],
    /// The same root in fundamental-weight coordinates.
    pub weight_coords: Weight,
    /// Pairings `<w_i, beta^v>`, i.e. the coroot in simple-coroot coordinates.
    pub coroot: [i64; RANK],
    /// Squared length: 2 for short roots, 4 for long.
    pub length_sq: i64,
}

/// The F4 root datum. Everything downstream of the Cartan matrix is
/// generated by reflection closure at construction and cross-checked
/// against structural invariants, not hard-coded.
pub struct RootDatum {
    roots: Vec<Root>,
    positive: Vec<usize>,
    alpha0: usize,
    /// Expansion of the fundamental weights in simple roots (the inverse
    /// Cartan matrix); row j holds the root coordinates of w_{j+1}.
    fw_in_roots: [[i64; RANK]; RANK],
    /// Gram matrix (w_i, w_j) of the W-invariant form normalised so that
    /// short roots have squared length 2.
    gram: [[i64; RANK]; RANK],
    /// |W_J| for every subset J of the simple reflections, indexed by bitmask.
    parabolic_order: [u64; 1 << RANK],
    coxeter_number: i64,
}

static F4: OnceLock<RootDatum> = OnceLock::new();

impl RootDatum {
    /// The shared F4 datum.
    pub fn f4() -> &'static RootDatum {
        F4.get_or_init(RootDatum::build)
    }

    fn build() -> RootDatum {
        let length_sq = simple_lengths();

        // Reflection closure of the simple roots, in simple-root coordinates.
        let mut seen: HashSet<[i64; RANK]> = HashSet::new();
        let mut queue: Vec<[i64; RANK]> = Vec::new();
        for i in 0..RANK {
            let mut n = [0i64; RANK];
            n[i] = 1;
            seen.insert(n);
            queue.push(n);
        }
        let mut head = 0;
        while head < queue.len() {
            let n = queue[head];
            head += 1;
            for i in 0..RANK {
                // <beta, a_i^v> = sum_j n_j * CARTAN[j][i]
                let c: i64 = (0..RANK).map(|j| n[j] * CARTAN[j][i]).sum();
                let mut m = n;
                m[i] -= c;
                if seen.insert(m) {
                    queue.push(m);
                }
            }
        }
        assert_eq!(queue.len(), 48, "F4 has 48 roots");

        let roots: Vec<Root> = queue
            .iter()
            .map(|&n| {
                let mut w = [0i64; RANK];
                for k in 0..RANK {
                    w[k] = (0..RANK).map(|i| n[i] * CARTAN[i][k]).sum();
                }
                // (beta, beta) via the simple-root Gram matrix
                // (a_i, a_j) = CARTAN[i][j] * len_j^2 / 2.
                let mut bb: i64 = 0;
                for i in 0..RANK {
                    for j in 0..RANK {
                        bb += n[i] * n[j] * CARTAN[i][j] * length_sq[j] / 2;
                    }
                }
                assert!(bb == 2 || bb == 4, "root length must be short or long");
                let mut coroot = [0i64; RANK];
                for i in 0..RANK {
                    let num = n[i] * length_sq[i];
                    assert_eq!(num % bb, 0, "coroot coordinates must be integral");
                    coroot[i] = num / bb;
                }
                Root {
                    root_coords: n,
                    weight_coords: Weight(w),
                    coroot,
                    length_sq: bb,
                }
            })
            .collect();

        let positive: Vec<usize> = (0..roots.len())
            .filter(|&k| roots[k].root_coords.iter().all(|&x| x >= 0))
            .collect();
        assert_eq!(positive.len(), 24, "F4 has 24 positive roots");
        let short = roots.iter().filter(|r| r.length_sq == 2).count();
        assert_eq!(short, 24, "F4 has 24 short roots");

        // Highest short root: the unique dominant short root.
        let dominant_short: Vec<usize> = positive
            .iter()
            .copied()
            .filter(|&k| roots[k].length_sq == 2 && roots[k].weight_coords.is_dominant())
            .collect();
        assert_eq!(dominant_short.len(), 1, "one dominant short root");
        let alpha0 = dominant_short[0];

        // Coxeter number h = |roots| / rank; the highest short coroot is the
        // highest coroot, so <rho, a0^v> = h - 1.
        let coxeter_number = (roots.len() / RANK) as i64;
        let rho_pairing: i64 = roots[alpha0].coroot.iter().sum();
        assert_eq!(rho_pairing, coxeter_number - 1);

        // Invert the Cartan matrix exactly; F4 has determinant 1, so the
        // fundamental weights lie in the root lattice.
        let mut fw_in_roots = [[0i64; RANK]; RANK];
        for j in 0..RANK {
            let mut rhs = [0i128; RANK];
            rhs[j] = 1;
            // Solve sum_i m_i * CARTAN[i][k] = delta_jk for m.
            let cols: [[i128; RANK]; RANK] = {
                let mut a = [[0i128; RANK]; RANK];
                for i in 0..RANK {
                    for k in 0..RANK {
                        a[k][i] = CARTAN[i][k] as i128;
                    }
                }
                a
            };
            let m = solve4(cols, rhs).expect("Cartan matrix is invertible over Z");
            for i in 0..RANK {
                fw_in_roots[j][i] = i64::try_from(m[i]).expect("inverse Cartan entry");
            }
        }

        let mut gram = [[0i64; RANK]; RANK];
        for i in 0..RANK {
            for j in 0..RANK {
                // (w_i, w_j) = M[j][i] * (a_i, a_i) / 2.
                gram[i][j] = fw_in_roots[j][i] * length_sq[i] / 2;
            }
        }
        for i in 0..RANK {
            for j in 0..RANK {
                assert_eq!(gram[i][j], gram[j][i], "invariant form must be symmetric");
            }
        }

        let mut datum = RootDatum {
            roots,
            positive,
            alpha0,
            fw_in_roots,
            gram,
            parabolic_order: [0; 1 << RANK],
            coxeter_number,
        };
        for mask in 0u32..(1 << RANK) {
            datum.parabolic_order[mask as usize] = datum.parabolic_order_of(mask);
        }
        datum
    }

    /// Orbit size of a J-regular weight under the parabolic subgroup W_J.
    fn parabolic_order_of(&self, mask: u32) -> u64 {
        let mut start = [0i64; RANK];
        for i in 0..RANK {
            if mask & (1 << i) != 0 {
                start[i] = 1;
            }
        }
        let mut seen: HashSet<[i64; RANK]> = HashSet::new();
        let mut queue = vec![start];
        seen.insert(start);
        let mut head = 0;
        while head < queue.len() {
            let w = queue[head];
            head += 1;
            for i in 0..RANK {
                if mask & (1 << i) == 0 {
                    continue;
                }
                let s = reflect_simple(&Weight(w), i).0;
                if seen.insert(s) {
                    queue.push(s);
                }
            }
        }
        queue.len() as u64
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.positive.iter().map(|&k| &self.roots[k])
    }

    pub fn highest_short_root(&self) -> &Root {
        &self.roots[self.alpha0]
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter_number
    }

    pub fn weyl_order(&self) -> u64 {
        self.parabolic_order[(1 << RANK) - 1]
    }

    pub fn cartan(&self) -> &[[i64; RANK]; RANK] {
        &CARTAN
    }

    /// `<lam, c^v>` for a labelled coroot.
    pub fn pairing(&self, lam: &Weight, label: CorootLabel) -> Result<i64, LatticeError> {
        match label {
            CorootLabel::Simple(i) if (1..=RANK).contains(&i) => Ok(lam.0[i - 1]),
            CorootLabel::Simple(i) => Err(LatticeError::UnknownCoroot(format!("a{i}"))),
            CorootLabel::HighestShort => Ok(self.alpha0_pairing(lam)),
        }
    }

    /// `<lam, a0^v>` where a0 is the highest short root (whose coroot is the
    /// highest coroot). Computed in i64; the pairing vector entries are <= 4.
    pub fn alpha0_pairing(&self, lam: &Weight) -> i64 {
        self.root_pairing(lam, self.alpha0)
    }

    /// `<lam, beta^v>` against the k-th enumerated root.
    pub fn root_pairing(&self, lam: &Weight, k: usize) -> i64 {
        let c = &self.roots[k].coroot;
        let mut acc: i128 = 0;
        for i in 0..RANK {
            acc += lam.0[i] as i128 * c[i] as i128;
        }
        i64::try_from(acc).expect("pairing overflow")
    }

    /// W-invariant form (a, b), short roots of squared length 2.
    pub fn form(&self, a: &Weight, b: &Weight) -> i128 {
        let mut acc: i128 = 0;
        for i in 0..RANK {
            for j in 0..RANK {
                acc += a.0[i] as i128 * b.0[j] as i128 * self.gram[i][j] as i128;
            }
        }
        acc
    }

    /// Expand a weight in simple-root coordinates. For F4 the weight and
    /// root lattices coincide, so this always succeeds; the error channel is
    /// kept for the sake of the interface.
    pub fn root_lattice_coords(&self, delta: &Weight) -> Result<[i64; RANK], LatticeError> {
        let mut n = [0i64; RANK];
        for j in 0..RANK {
            let mut acc: i128 = 0;
            for k in 0..RANK {
                acc += delta.0[k] as i128 * self.fw_in_roots[k][j] as i128;
            }
            n[j] = i64::try_from(acc).map_err(|_| LatticeError::NotInRootLattice(*delta))?;
        }
        Ok(n)
    }

    /// True iff `b - a` is a nonnegative integral combination of simple roots.
    pub fn dominance_leq(&self, a: &Weight, b: &Weight) -> bool {
        match self.root_lattice_coords(&b.minus(a)) {
            Ok(n) => n.iter().all(|&x| x >= 0),
            Err(_) => false,
        }
    }

    /// The dominant Weyl-conjugate of `lam`.
    pub fn dominant_rep(&self, lam: &Weight) -> Weight {
        let mut w = *lam;
        loop {
            match (0..RANK).find(|&i| w.0[i] < 0) {
                Some(i) => w = reflect_simple(&w, i),
                None => return w,
            }
        }
    }

    /// Full Weyl orbit, sorted.
    pub fn weyl_orbit(&self, lam: &Weight) -> Vec<Weight> {
        let mut seen: HashSet<[i64; RANK]> = HashSet::new();
        let mut queue = vec![lam.0];
        seen.insert(lam.0);
        let mut head = 0;
        while head < queue.len() {
            let w = queue[head];
            head += 1;
            for i in 0..RANK {
                let s = reflect_simple(&Weight(w), i).0;
                if seen.insert(s) {
                    queue.push(s);
                }
            }
        }
        let mut out: Vec<Weight> = queue.into_iter().map(Weight).collect();
        out.sort();
        out
    }

    /// Orbit size through the stabiliser: the stabiliser of a dominant weight
    /// is the parabolic generated by the simple reflections fixing it.
    pub fn orbit_size(&self, lam: &Weight) -> u64 {
        let d = self.dominant_rep(lam);
        let mut mask = 0u32;
        for i in 0..RANK {
            if d.0[i] == 0 {
                mask |= 1 << i;
            }
        }
        let stab = self.parabolic_order[mask as usize];
        debug_assert_eq!(self.weyl_order() % stab, 0);
        self.weyl_order() / stab
    }

    /// `-w0(lam)`, the highest weight of the dual; equals `lam` for F4
    /// because the longest Weyl element acts as -1.
    pub fn dual_weight(&self, lam: &Weight) -> Weight {
        self.dominant_rep(&Weight::ZERO.minus(lam))
    }

    /// The unique point of the dot-action orbit of `lam` under the affine
    /// Weyl group W_p in the closure of the fundamental p-alcove:
    /// `0 <= <x + rho, a^v> <= p` for every positive root a. Two weights are
    /// dot-linked iff they share a representative.
    pub fn alcove_representative(&self, lam: &Weight, p: i64) -> Weight {
        assert!(p >= 2, "alcove reduction needs p >= 2");
        let alpha0_w = self.roots[self.alpha0].weight_coords;
        let mut x = lam.plus(&Weight::rho());
        loop {
            x = self.dominant_rep(&x);
            let c = self.alpha0_pairing(&x);
            if c <= p {
                break;
            }
            // Affine reflection in the wall <., a0^v> = p; this strictly
            // decreases the invariant norm of x, so the loop terminates.
            x = x.minus(&alpha0_w.scaled(c - p));
        }
        x.minus(&Weight::rho())
    }
}

/// s_i applied to a weight in fundamental-weight coordinates.
fn reflect_simple(w: &Weight, i: usize) -> Weight {
    let c = w.0[i];
    let mut out = [0i64; RANK];
    for k in 0..RANK {
        out[k] = w.0[k]
            .checked_sub(c.checked_mul(CARTAN[i][k]).expect("weight coordinate overflow"))
            .expect("weight coordinate overflow");
    }
    Weight(out)
}

/// Squared lengths of the simple roots, derived from the Cartan matrix by
/// symmetrising the invariant form, normalised so short roots have length 2.
fn simple_lengths() -> [i64; RANK] {
    let mut len = [0i64; RANK];
    len[RANK - 1] = 2; // a4 is short
    loop {
        let mut progressed = false;
        for i in 0..RANK {
            for j in 0..RANK {
                if len[i] == 0 && len[j] != 0 && CARTAN[i][j] != 0 {
                    // (a_i, a_j) symmetric: C[i][j] len_j = C[j][i] len_i.
                    let num = len[j] * CARTAN[i][j];
                    assert_eq!(num % CARTAN[j][i], 0);
                    len[i] = num / CARTAN[j][i];
                    progressed = true;
                }
            }
        }
        if len.iter().all(|&l| l != 0) {
            break;
        }
        assert!(progressed, "Dynkin diagram must be connected");
    }
    let min = *len.iter().min().unwrap();
    assert_eq!(min, 2, "normalisation: short roots have squared length 2");
    len
}

/// Exact 4x4 integer solve by Cramer's rule; returns None unless the
/// solution is integral.
fn solve4(a: [[i128; RANK]; RANK], b: [i128; RANK]) -> Option<[i128; RANK]> {
    let det = det4(&a);
    if det == 0 {
        return None;
    }
    let mut x = [0i128; RANK];
    for col in 0..RANK {
        let mut m = a;
        for row in 0..RANK {
            m[row][col] = b[row];
        }
        let d = det4(&m);
        if d % det != 0 {
            return None;
        }
        x[col] = d / det;
    }
    Some(x)
}

fn det4(m: &[[i128; RANK]; RANK]) -> i128 {
    let mut acc = 0i128;
    // Expansion along the first row; the 3x3 minors are spelled out.
    for c0 in 0..RANK {
        let cols: Vec<usize> = (0..RANK).filter(|&c| c != c0).collect();
        let minor = m[1][cols[0]] * (m[2][cols[1]] * m[3][cols[2]] - m[2][cols[2]] * m[3][cols[1]])
            - m[1][cols[1]] * (m[2][cols[0]] * m[3][cols[2]] - m[2][cols[2]] * m[3][cols[0]])
            + m[1][cols[2]] * (m[2][cols[0]] * m[3][cols[1]] - m[2][cols[1]] * m[3][cols[0]]);
        let sign = if c0 % 2 == 0 { 1 } else { -1 };
        acc += sign * m[0][c0] * minor;
    }
    acc
}
