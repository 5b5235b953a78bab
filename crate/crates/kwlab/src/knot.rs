//! Knot data, divisors and the existence classification for Nahm pole
//! solutions on `S¹ × Σ × ℝ⁺`.
//!
//! Points of the surface are opaque identifiers: every statement used here
//! depends only on degrees and on equality of divisors at marked points.
//! Counting uses arbitrary-precision integers.

use nalgebra::DMatrix;
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Serializes big integers as decimal strings.
mod decimal {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};
    use std::fmt::Display;
    use std::str::FromStr;

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T: FromStr, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| D::Error::custom(format!("invalid integer {s:?}")))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnotError {
    #[error("point id {0:?} appears twice")]
    DuplicatePoint(String),
    #[error("weight at {0:?} has no nonzero entry")]
    TrivialWeight(String),
    #[error("weight at {id:?} has {got} entries, rank {n} needs {expected}")]
    WeightLength { id: String, got: usize, expected: usize, n: u32 },
    #[error("rank must be at least 2, got {0}")]
    Rank(u32),
    #[error("genus {0} is outside this statement's range (needs g >= 2)")]
    GenusTooSmall(u32),
    #[error("vanishing orders at {id:?} decrease between f_{j} and f_{next}", next = j + 1)]
    DecreasingOrders { id: String, j: usize },
    #[error("expected {expected} vanishing orders at {id:?}, got {got}")]
    OrderCount { id: String, got: usize, expected: usize },
    #[error("degree of the sub-line bundle must satisfy 0 < deg ℓ < g - 1 (deg ℓ = {deg_l}, g = {g})")]
    SubbundleDegree { deg_l: i64, g: u32 },
    #[error("matrix sample {0} is not square")]
    NotSquare(usize),
}

/// A finite formal sum of points with nonzero integer multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divisor {
    entries: BTreeMap<String, i64>,
}

impl Divisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (S, i64)>, S: Into<String>>(pairs: I) -> Self {
        let mut d = Divisor::new();
        for (p, m) in pairs {
            d.add_point(p, m);
        }
        d
    }

    pub fn add_point(&mut self, p: impl Into<String>, m: i64) {
        let key = p.into();
        let v = self.entries.entry(key.clone()).or_insert(0);
        *v += m;
        if *v == 0 {
            self.entries.remove(&key);
        }
    }

    pub fn multiplicity(&self, p: &str) -> i64 {
        self.entries.get(p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, i64)> {
        self.entries.iter().map(|(k, &v)| (k.as_str(), v))
    }
}

/// A marked point with its weight `(k_1, ..., k_{n-1})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotPoint {
    pub id: String,
    pub weight: Vec<u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotData {
    points: Vec<KnotPoint>,
}

impl KnotData {
    pub fn new(points: Vec<KnotPoint>) -> Result<Self, KnotError> {
        let mut seen = std::collections::BTreeSet::new();
        for p in &points {
            if !seen.insert(p.id.clone()) {
                return Err(KnotError::DuplicatePoint(p.id.clone()));
            }
            if p.weight.iter().all(|&k| k == 0) {
                return Err(KnotError::TrivialWeight(p.id.clone()));
            }
        }
        Ok(KnotData { points })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn points(&self) -> &[KnotPoint] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Disjoint union; fails when an id occurs in both.
    pub fn union(&self, other: &KnotData) -> Result<KnotData, KnotError> {
        KnotData::new(self.points.iter().chain(&other.points).cloned().collect())
    }

    /// Checks that every weight has `n - 1` entries.
    pub fn check_rank(&self, n: u32) -> Result<(), KnotError> {
        if n < 2 {
            return Err(KnotError::Rank(n));
        }
        for p in &self.points {
            if p.weight.len() != n as usize - 1 {
                return Err(KnotError::WeightLength { id: p.id.clone(), got: p.weight.len(), expected: n as usize - 1, n });
            }
        }
        Ok(())
    }

    /// Equality as sets of `(point, weight)` pairs.
    pub fn same_as(&self, other: &KnotData) -> bool {
        let key = |k: &KnotData| {
            let mut v: Vec<_> = k.points.iter().map(|p| (p.id.clone(), p.weight.clone())).collect();
            v.sort();
            v
        };
        key(self) == key(other)
    }
}

/// `D = Σ_i p_i Σ_j k_j^i`.
pub fn divisor_from_knot_data(kd: &KnotData) -> Divisor {
    Divisor::from_pairs(kd.points.iter().map(|p| (p.id.clone(), p.weight.iter().map(|&k| k as i64).sum())))
}

/// A line bundle tracked by degree plus an optional `n`-torsion label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineBundleClass {
    #[serde(with = "decimal")]
    pub degree: BigInt,
    pub torsion_label: Option<String>,
}

impl LineBundleClass {
    pub fn canonical(g: u32) -> Self {
        LineBundleClass { degree: BigInt::from(2 * g as i64 - 2), torsion_label: None }
    }
}

/// Genus and rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub g: u32,
    pub n: u32,
}

impl SurfaceSpec {
    pub fn new(g: u32, n: u32) -> Result<Self, KnotError> {
        if n < 2 {
            return Err(KnotError::Rank(n));
        }
        Ok(SurfaceSpec { g, n })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum Admissibility {
    /// `n` does not divide `deg D`.
    Inadmissible,
    /// The degree of `L` with `Lⁿ = L_D⁻¹ ⊗ K^{n(n-1)/2}`.
    Admissible {
        #[serde(with = "decimal")]
        deg_l: BigInt,
    },
}

/// Solves `deg D = -n deg L + n(n-1)(g-1)` for `deg L`.
pub fn admissibility(d: &Divisor, s: SurfaceSpec) -> Result<Admissibility, KnotError> {
    if s.g < 2 {
        return Err(KnotError::GenusTooSmall(s.g));
    }
    if s.n < 2 {
        return Err(KnotError::Rank(s.n));
    }
    let n = BigInt::from(s.n);
    let deg = BigInt::from(d.degree());
    if &deg % &n != BigInt::from(0) {
        return Ok(Admissibility::Inadmissible);
    }
    let top = &n * (&n - 1) * (BigInt::from(s.g) - 1);
    Ok(Admissibility::Admissible { deg_l: (top - deg) / n })
}

/// `L` with `Lⁿ = L_D⁻¹ ⊗ K^{n(n-1)/2} ⊗ N` for an `n`-torsion twist labelled
/// `torsion`, when admissible.
pub fn line_bundle_for(d: &Divisor, s: SurfaceSpec, torsion: Option<String>) -> Result<Option<LineBundleClass>, KnotError> {
    Ok(match admissibility(d, s)? {
        Admissibility::Inadmissible => None,
        Admissibility::Admissible { deg_l } => Some(LineBundleClass { degree: deg_l, torsion_label: torsion }),
    })
}

/// `n^{2g}`, the number of `n`-torsion twists.
pub fn solution_count_bound(s: SurfaceSpec) -> BigUint {
    BigUint::from(s.n).pow(2 * s.g)
}

/// Knot data read off vanishing orders of `f_1, ..., f_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingData {
    pub knot_data: KnotData,
    /// Raised when every weight vanishes, i.e. the Higgs bundle lies in the
    /// Hitchin component and `L ≅ K^{(n-1)/2}`.
    pub hitchin_component: bool,
}

/// `k_j = ord(f_{j+1}) - ord(f_j)` at each point; points with zero weight
/// are dropped.
pub fn knot_data_from_vanishing(n: u32, orders: &[(String, Vec<u32>)]) -> Result<VanishingData, KnotError> {
    if n < 2 {
        return Err(KnotError::Rank(n));
    }
    let mut points = Vec::new();
    for (id, ord) in orders {
        if ord.len() != n as usize {
            return Err(KnotError::OrderCount { id: id.clone(), got: ord.len(), expected: n as usize });
        }
        let mut w = Vec::with_capacity(n as usize - 1);
        for j in 0..n as usize - 1 {
            if ord[j + 1] < ord[j] {
                return Err(KnotError::DecreasingOrders { id: id.clone(), j: j + 1 });
            }
            w.push(ord[j + 1] - ord[j]);
        }
        if w.iter().any(|&k| k != 0) {
            points.push(KnotPoint { id: id.clone(), weight: w });
        }
    }
    let knot_data = KnotData::new(points)?;
    Ok(VanishingData { hitchin_component: knot_data.is_empty(), knot_data })
}

/// Coefficients `p_1, ..., p_n` of `det(λ - φ) = Σ_j λ^{n-j} (-1)^j p_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct FibrationPoint {
    /// `p[j-1] = p_j`; `p_1` is the trace and should vanish.
    pub p: Vec<Complex64>,
}

impl FibrationPoint {
    pub fn p(&self, j: usize) -> Complex64 {
        self.p[j - 1]
    }
}

/// Characteristic-polynomial coefficients by the Faddeev–LeVerrier
/// recursion.
pub fn hitchin_fibration(samples: &[DMatrix<Complex64>]) -> Result<Vec<FibrationPoint>, KnotError> {
    samples
        .iter()
        .enumerate()
        .map(|(i, phi)| {
            if !phi.is_square() {
                return Err(KnotError::NotSquare(i));
            }
            let n = phi.nrows();
            // c[k] is the coefficient of λ^k in det(λ - φ)
            let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
            c[n] = Complex64::new(1.0, 0.0);
            let id = DMatrix::<Complex64>::identity(n, n);
            let mut m = DMatrix::<Complex64>::zeros(n, n);
            for k in 1..=n {
                m = phi * &m + &id * c[n - k + 1];
                c[n - k] = -(phi * &m).trace() / k as f64;
            }
            let p = (1..=n).map(|j| if j % 2 == 0 { c[n - j] } else { -c[n - j] }).collect();
            Ok(FibrationPoint { p })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum Sl2Verdict {
    UniqueSolution,
    NoSolution { reason: String },
    /// The degree of `D` lies outside both cases of the statement.
    NotCovered,
}

/// Existence for an `SL(2,ℝ)` limit outside the Hitchin section, given the
/// degree of the destabilising sub-line bundle `ℓ` and the zero divisor of
/// the off-diagonal entry `α`.
pub fn nonhitchin_sl2_check(deg_l: i64, g: u32, d: &Divisor, z_alpha: &Divisor) -> Result<Sl2Verdict, KnotError> {
    if !(deg_l > 0 && deg_l < g as i64 - 1) {
        return Err(KnotError::SubbundleDegree { deg_l, g });
    }
    let top = 2 * g as i64 - 2;
    let deg = d.degree();
    let edge = top - 2 * deg_l;
    Ok(if deg == edge {
        if d == z_alpha {
            Sl2Verdict::UniqueSolution
        } else {
            Sl2Verdict::NoSolution { reason: "deg D = 2g-2-2deg ℓ but D differs from Z(α)".into() }
        }
    } else if deg > edge && deg < top {
        Sl2Verdict::NoSolution { reason: "2g-2 > deg D > 2g-2-2deg ℓ".into() }
    } else {
        Sl2Verdict::NotCovered
    })
}

/// What is known about the limiting flat connection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Limit {
    HitchinSection,
    NotHitchinSection,
    /// Irreducible limit with an optional data set `𝔡(ℰ, φ, L)` of a
    /// user-supplied holomorphic line subbundle.
    Irreducible { witness: Option<KnotData> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    NoSolutions { reason: String },
    /// Unique up to unitary gauge equivalence.
    Unique,
    ExistsUnique,
    /// The line-subbundle witness matches the knot data; at most `bound`
    /// solutions. Irreducibility of the limit is assumed, not tested.
    ConditionalExists {
        #[serde(with = "decimal")]
        bound: BigUint,
        #[serde(with = "decimal")]
        deg_l: BigInt,
        irreducibility_assumed: bool,
    },
    /// Admissible, but no witness was supplied to decide existence.
    AdmissibleUnwitnessed {
        #[serde(with = "decimal")]
        bound: BigUint,
        #[serde(with = "decimal")]
        deg_l: BigInt,
    },
    /// Knotted solutions on the torus are not covered.
    ExplicitlyUndetermined { reason: String },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::NoSolutions { .. } => "NoSolutions",
            Verdict::Unique => "Unique",
            Verdict::ExistsUnique => "ExistsUnique",
            Verdict::ConditionalExists { .. } => "ConditionalExists",
            Verdict::AdmissibleUnwitnessed { .. } => "AdmissibleUnwitnessed",
            Verdict::ExplicitlyUndetermined { .. } => "ExplicitlyUndetermined",
        }
    }
}

/// Top-level existence classifier.
pub fn classify_existence(s: SurfaceSpec, limit: &Limit, kd: Option<&KnotData>) -> Result<Verdict, KnotError> {
    let kd = kd.filter(|k| !k.is_empty());
    if let Some(k) = kd {
        k.check_rank(s.n)?;
    }
    if s.g == 0 {
        return Ok(Verdict::NoSolutions { reason: "g = 0".into() });
    }
    if s.g == 1 {
        return Ok(match kd {
            None => Verdict::Unique,
            Some(_) => Verdict::ExplicitlyUndetermined { reason: "knot singularities on the torus".into() },
        });
    }
    match kd {
        None => Ok(match limit {
            Limit::HitchinSection => Verdict::ExistsUnique,
            Limit::Irreducible { witness: Some(w) } if w.is_empty() => Verdict::ExistsUnique,
            _ => Verdict::NoSolutions { reason: "limiting flat connection is not in the Hitchin section".into() },
        }),
        Some(k) => {
            let d = divisor_from_knot_data(k);
            let deg_l = match admissibility(&d, s)? {
                Admissibility::Inadmissible => {
                    return Ok(Verdict::NoSolutions { reason: format!("n = {} does not divide deg D = {}", s.n, d.degree()) })
                }
                Admissibility::Admissible { deg_l } => deg_l,
            };
            let bound = solution_count_bound(s);
            Ok(match limit {
                Limit::Irreducible { witness: Some(w) } => {
                    if w.same_as(k) {
                        Verdict::ConditionalExists { bound, deg_l, irreducibility_assumed: true }
                    } else {
                        Verdict::NoSolutions { reason: "the line-subbundle data set differs from the knot data".into() }
                    }
                }
                _ => Verdict::AdmissibleUnwitnessed { bound, deg_l },
            })
        }
    }
}
