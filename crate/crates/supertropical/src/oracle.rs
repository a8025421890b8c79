//! Brute-force references, seeded random matrix generators, and the
//! property-run harness.
//!
//! The brute-force permanent and bideterminant here are deliberately a
//! second, independent implementation (Laplace expansion and hand-rolled
//! lexicographic permutation walking) kept apart from the [`determinant`]
//! module's enumeration, so the artifact's most-used primitive is guarded
//! against a single-point bug.
//!
//! [`registry`] names one runnable property per documented invariant of the
//! library modules; [`property_run`] executes any of them by id with a
//! deterministic per-trial seed (`master + trial index`), so a reported
//! failure seed replays bit-exactly as trial 0 of a one-trial run.

use std::result::Result as StdResult;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{
    group_membership, in_sl1, is_definite, is_strictly_normal, nonfact_pattern,
    perij_witness, WitnessMode,
};
use crate::determinant::{bid, classify_singularity, dominance, per, Singularity};
use crate::elementary::{bridge, ed_factor, sns_witness_with_part, word_product, ElemGen};
use crate::error::{Error, Result};
use crate::matrix::{GenPerm, Matrix, Perm};
use crate::nabla::{adj, is_idempotent, is_quasi_identity, nabla, nabla2, quasi_pack};
use crate::semiring::{rat, Rat, SymPair, TropElem};

/// Default half-width of the integer log-value range scalars are drawn from.
pub const DEFAULT_RANGE: i128 = 8;
/// Probability that a drawn scalar is ghost (given it is nonzero).
const GHOST_P: f64 = 0.2;
/// Probability that a drawn scalar is `𝟘`.
const ZERO_P: f64 = 0.15;

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Random scalars and matrices
// ---------------------------------------------------------------------------

fn general_scalar(rng: &mut ChaCha8Rng, range: i128) -> TropElem {
    if rng.gen_bool(ZERO_P) {
        return TropElem::Zero;
    }
    let v = rat(rng.gen_range(-range..=range), 1);
    if rng.gen_bool(GHOST_P) {
        TropElem::Ghost(v)
    } else {
        TropElem::Tangible(v)
    }
}

fn tangible_scalar(rng: &mut ChaCha8Rng, range: i128) -> TropElem {
    if rng.gen_bool(ZERO_P) {
        TropElem::Zero
    } else {
        TropElem::Tangible(rat(rng.gen_range(-range..=range), 1))
    }
}

fn nonzero_tangible(rng: &mut ChaCha8Rng, range: i128) -> TropElem {
    TropElem::Tangible(rat(rng.gen_range(-range..=range), 1))
}

/// A scalar with strictly negative ν-value, or `𝟘`; ghosts allowed.
fn negative_scalar(rng: &mut ChaCha8Rng, range: i128) -> TropElem {
    if rng.gen_bool(ZERO_P) {
        return TropElem::Zero;
    }
    let v = rat(rng.gen_range(-range..=-1), 1);
    if rng.gen_bool(GHOST_P) {
        TropElem::Ghost(v)
    } else {
        TropElem::Tangible(v)
    }
}

fn general_matrix(rng: &mut ChaCha8Rng, n: usize, range: i128) -> Matrix {
    Matrix::from_fn(n, |_, _| general_scalar(rng, range))
}

fn tangible_matrix(rng: &mut ChaCha8Rng, n: usize, range: i128) -> Matrix {
    Matrix::from_fn(n, |_, _| tangible_scalar(rng, range))
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        images.swap(i, j);
    }
    Perm::from_images(images).expect("shuffled identity is a permutation")
}

fn random_genperm(rng: &mut ChaCha8Rng, n: usize, range: i128) -> GenPerm {
    let perm = random_perm(rng, n);
    let weights = (0..n).map(|_| nonzero_tangible(rng, range)).collect();
    GenPerm::new(perm, weights).expect("tangible weights")
}

/// A generalized permutation with `per = 𝟙` (weight values summing to zero).
fn unit_genperm(rng: &mut ChaCha8Rng, n: usize, range: i128) -> GenPerm {
    let perm = random_perm(rng, n);
    let mut values: Vec<Rat> = (0..n - 1).map(|_| rat(rng.gen_range(-range..=range), 1)).collect();
    let sum: Rat = values.iter().copied().fold(rat(0, 1), |a, b| a + b);
    values.push(-sum);
    let weights = values.into_iter().map(TropElem::Tangible).collect();
    GenPerm::new(perm, weights).expect("tangible weights")
}

/// `𝟙` diagonal with strictly ν-negative off-diagonal entries: strictly
/// normal by construction, hence definite.
fn strictly_normal_matrix(rng: &mut ChaCha8Rng, n: usize, range: i128) -> Matrix {
    Matrix::from_fn(n, |i, j| {
        if i == j {
            TropElem::one()
        } else {
            negative_scalar(rng, range)
        }
    })
}

/// A definite matrix: strictly normal core, optionally conjugated by a
/// random tangible diagonal (which preserves definiteness but can push
/// individual entries above `𝟙`, leaving the normal class).
fn definite_matrix(rng: &mut ChaCha8Rng, n: usize, range: i128) -> Matrix {
    let core = strictly_normal_matrix(rng, n, range);
    if !rng.gen_bool(0.5) {
        return core;
    }
    let d: Vec<TropElem> = (0..n).map(|_| nonzero_tangible(rng, range)).collect();
    Matrix::from_fn(n, |i, j| {
        d[i] * core.get(i, j) * d[j].inv().expect("tangible diagonal")
    })
}

/// A matrix with `per = 𝟙`: a unit generalized permutation times a definite
/// matrix.
fn sl_matrix(rng: &mut ChaCha8Rng, n: usize, range: i128) -> Matrix {
    unit_genperm(rng, n, range)
        .to_matrix()
        .try_mul(&definite_matrix(rng, n, range))
        .expect("same size")
}

/// A unit-track matrix: permutations around a strictly normal core keep one
/// exact `𝟙` per row and column dominating everything else.
fn sl1_matrix(rng: &mut ChaCha8Rng, n: usize, range: i128) -> Matrix {
    let left = Matrix::permutation(&random_perm(rng, n));
    let right = Matrix::permutation(&random_perm(rng, n));
    left.try_mul(&strictly_normal_matrix(rng, n, range))
        .and_then(|m| m.try_mul(&right))
        .expect("same size")
}

/// Nonsingular sample: rejection from the general distribution, with a
/// constructive generalized-permutation sandwich as fallback.
fn nonsingular_matrix(rng: &mut ChaCha8Rng, n: usize, range: i128) -> Matrix {
    for _ in 0..64 {
        let m = general_matrix(rng, n, range);
        if per(&m).map(|p| p.is_tangible()).unwrap_or(false) {
            return m;
        }
    }
    random_genperm(rng, n, range)
        .to_matrix()
        .try_mul(&definite_matrix(rng, n, range))
        .and_then(|m| m.try_mul(&random_genperm(rng, n, range).to_matrix()))
        .expect("same size")
}

/// An idempotent nonsingular matrix: `𝟙` diagonal with one shared negative
/// ghost off the diagonal. Every such matrix is a reversible quasi-identity.
fn simple_quasi_identity(rng: &mut ChaCha8Rng, n: usize, range: i128) -> Matrix {
    let g = TropElem::Ghost(rat(rng.gen_range(-range..=-1), 1));
    Matrix::from_fn(n, |i, j| if i == j { TropElem::one() } else { g })
}

/// The class a random matrix is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MatrixKind {
    /// Unconstrained entries (ghosts and zeros included).
    General,
    /// No ghost entries.
    Tangible,
    /// `per = 𝟙` exactly.
    Sl,
    /// Definite: `𝟙` diagonal and `per = 𝟙`.
    Definite,
    /// `𝟙` diagonal, all off-diagonal entries strictly ν-negative.
    StrictlyNormal,
    /// Unit-track: one exact `𝟙` per row dominating its row, columns a
    /// permutation.
    Sl1,
    /// Generalized permutation (invertible).
    GenPerm,
}

/// Deterministic seeded sample from the requested class, with membership
/// asserted after construction. Uses the default log-value range.
pub fn random_special(seed: u64, n: usize, kind: MatrixKind) -> Matrix {
    random_special_in_range(seed, n, kind, DEFAULT_RANGE)
}

/// [`random_special`] with an explicit log-value half-range.
pub fn random_special_in_range(seed: u64, n: usize, kind: MatrixKind, range: i128) -> Matrix {
    assert!(n >= 1, "matrices are at least 1×1");
    assert!(range >= 1, "scalar range must be positive");
    let rng = &mut rng_for(seed);
    let m = match kind {
        MatrixKind::General => general_matrix(rng, n, range),
        MatrixKind::Tangible => tangible_matrix(rng, n, range),
        MatrixKind::Sl => sl_matrix(rng, n, range),
        MatrixKind::Definite => definite_matrix(rng, n, range),
        MatrixKind::StrictlyNormal => strictly_normal_matrix(rng, n, range),
        MatrixKind::Sl1 => sl1_matrix(rng, n, range),
        MatrixKind::GenPerm => random_genperm(rng, n, range).to_matrix(),
    };
    let checkable = n <= crate::determinant::ASSIGNMENT_BOUND;
    match kind {
        MatrixKind::General => {}
        MatrixKind::Tangible => {
            assert!((0..n).all(|i| m.row(i).iter().all(|e| !e.is_ghost())))
        }
        MatrixKind::Sl => {
            if checkable {
                let p = crate::determinant::per_assignment(&m).expect("within bound");
                assert_eq!(p, TropElem::one(), "per = 𝟙 construction");
            }
        }
        MatrixKind::Definite => {
            if checkable {
                assert!(is_definite(&m).expect("within bound"));
            }
        }
        MatrixKind::StrictlyNormal => assert!(is_strictly_normal(&m)),
        MatrixKind::Sl1 => assert!(in_sl1(&m)),
        MatrixKind::GenPerm => assert!(GenPerm::from_matrix(&m).is_some()),
    }
    m
}

// ---------------------------------------------------------------------------
// Brute force reference
// ---------------------------------------------------------------------------

/// Laplace expansion along the first row.
fn laplace_per(a: &Matrix) -> TropElem {
    let n = a.n();
    if n == 0 {
        return TropElem::one();
    }
    if n == 1 {
        return a.get(0, 0);
    }
    let mut acc = TropElem::Zero;
    for j in 0..n {
        let e = a.get(0, j);
        if e.is_zero() {
            continue;
        }
        acc = acc + e * laplace_per(&a.minor(0, j));
    }
    acc
}

/// Signed Laplace expansion: removing column `j` flips the parity carried by
/// the recursion exactly when `j` is odd.
fn laplace_bid(a: &Matrix) -> SymPair {
    let n = a.n();
    if n == 0 {
        return SymPair::one();
    }
    if n == 1 {
        return SymPair::from_elem(a.get(0, 0));
    }
    let mut acc = SymPair::zero();
    for j in 0..n {
        let e = a.get(0, j);
        if e.is_zero() {
            continue;
        }
        let sub = laplace_bid(&a.minor(0, j));
        let term = if j % 2 == 0 {
            SymPair::new(e * sub.pos, e * sub.neg)
        } else {
            SymPair::new(e * sub.neg, e * sub.pos)
        };
        acc = acc + term;
    }
    acc
}

/// Walk all permutations of `0..n` in lexicographic order without
/// materializing the list.
fn walk_perms(n: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], visit: &mut impl FnMut(&[usize])) {
        if cur.len() == n {
            visit(cur);
            return;
        }
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                cur.push(j);
                rec(n, cur, used, visit);
                cur.pop();
                used[j] = false;
            }
        }
    }
    rec(n, &mut Vec::with_capacity(n), &mut vec![false; n], &mut visit);
}

/// Independent reference for the permanent, the bideterminant, and the set
/// of dominant permutations (lexicographic order), for `n ≤ 10`.
pub fn brute_force_per(a: &Matrix) -> Result<(TropElem, SymPair, Vec<Perm>)> {
    let n = a.n();
    if n > 10 {
        return Err(Error::domain(format!(
            "brute-force reference is capped at n ≤ 10, got n = {n}"
        )));
    }
    let per = laplace_per(a);
    let bid = laplace_bid(a);
    let value = per.nu();
    let mut dominant = Vec::new();
    walk_perms(n, |images| {
        let mut track = TropElem::one();
        for (i, &j) in images.iter().enumerate() {
            track = track * a.get(i, j);
        }
        if track.nu_eq(&value) {
            dominant.push(Perm::from_images(images.to_vec()).expect("permutation"));
        }
    });
    Ok((per, bid, dominant))
}

// ---------------------------------------------------------------------------
// Conjecture search (report only, no claims)
// ---------------------------------------------------------------------------

/// Outcome counts of sampling definite lower·upper products and testing
/// them for membership in `{A^∇ : A ∈ SL_n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub trials: u64,
    /// Samples `B` proved in the image constructively: `(B^∇)^∇ = B`.
    pub in_image: u64,
    /// Triangular samples, outside the question's scope.
    pub triangular_skipped: u64,
    /// Non-triangular samples the constructive test left unresolved
    /// (capped at sixteen). No claim is attached to them.
    pub candidates: Vec<Matrix>,
}

/// Sample definite matrices in the product set `T^ℓ·T^u` (unit lower
/// triangular times unit upper triangular, strictly negative entries) and
/// test each non-triangular one for membership in `{A^∇ : A ∈ SL_n}` by
/// inverting the ∇ machinery: `B` is in the image exactly when some
/// `A ∈ SL_n` has `A^∇ = B`, and `A = B^∇` is the canonical candidate.
pub fn conjecture_search(seed: u64, trials: u64, n: usize) -> Result<ConjectureReport> {
    if n < 2 {
        return Err(Error::domain("the product set is only interesting for n ≥ 2"));
    }
    let rng = &mut rng_for(seed);
    let mut report = ConjectureReport {
        trials,
        in_image: 0,
        triangular_skipped: 0,
        candidates: Vec::new(),
    };
    let one = TropElem::one();
    for _ in 0..trials {
        let strict_negative = |rng: &mut ChaCha8Rng| {
            if rng.gen_bool(0.4) {
                TropElem::Zero
            } else {
                TropElem::Tangible(rat(rng.gen_range(-DEFAULT_RANGE..=-1), 1))
            }
        };
        let l = Matrix::from_fn(n, |i, j| {
            if i == j {
                one
            } else if i > j {
                strict_negative(rng)
            } else {
                TropElem::Zero
            }
        });
        let u = Matrix::from_fn(n, |i, j| {
            if i == j {
                one
            } else if i < j {
                strict_negative(rng)
            } else {
                TropElem::Zero
            }
        });
        let b = l.try_mul(&u)?;
        assert!(is_definite(&b)?, "unit-triangular negative products are definite");
        let lower_trivial = (0..n).all(|i| (0..i).all(|j| b.get(i, j).is_zero()));
        let upper_trivial = (0..n).all(|i| (i + 1..n).all(|j| b.get(i, j).is_zero()));
        if lower_trivial || upper_trivial {
            report.triangular_skipped += 1;
            continue;
        }
        let a = nabla(&b)?;
        if per(&a)? == one && nabla(&a)? == b {
            report.in_image += 1;
        } else if report.candidates.len() < 16 {
            report.candidates.push(b);
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Property harness
// ---------------------------------------------------------------------------

/// One failing trial with everything needed to replay it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyFailure {
    pub trial: u64,
    /// Rerun `property_run(id, 1, seed)` with this seed to replay the trial
    /// bit-exactly.
    pub seed: u64,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PropertyStatus {
    Passed,
    Failed,
}

/// Aggregated outcome of running one registered property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub id: String,
    pub trials: u64,
    pub failures: Vec<PropertyFailure>,
    pub status: PropertyStatus,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.status == PropertyStatus::Passed
    }
}

/// A registered property: a named, seeded, self-contained check.
pub struct PropertySpec {
    pub id: &'static str,
    /// The module whose documented invariant this property runs.
    pub module: &'static str,
    pub summary: &'static str,
    runner: fn(u64) -> StdResult<(), String>,
}

/// Run a registered property `trials` times. Trial `t` uses seed
/// `master + t`, so every failure is replayable as a one-trial run.
pub fn property_run(property_id: &str, trials: u64, seed: u64) -> Result<PropertyReport> {
    let spec = registry()
        .iter()
        .find(|s| s.id == property_id)
        .ok_or_else(|| {
            Error::domain(format!(
                "unknown property id {property_id:?}; the registry lists {} properties",
                registry().len()
            ))
        })?;
    let mut failures = Vec::new();
    for trial in 0..trials {
        let trial_seed = seed.wrapping_add(trial);
        if let Err(detail) = (spec.runner)(trial_seed) {
            failures.push(PropertyFailure { trial, seed: trial_seed, detail });
        }
    }
    let status = if failures.is_empty() {
        PropertyStatus::Passed
    } else {
        PropertyStatus::Failed
    };
    Ok(PropertyReport { id: property_id.to_string(), trials, failures, status })
}

/// All registered properties, one per documented module invariant.
pub fn registry() -> &'static [PropertySpec] {
    &REGISTRY
}

macro_rules! prop {
    ($id:ident, $module:literal, $summary:literal) => {
        PropertySpec { id: stringify!($id), module: $module, summary: $summary, runner: $id }
    };
}

static REGISTRY: [PropertySpec; 37] = [
    prop!(scalar_ring_axioms, "semiring", "addition and multiplication are associative, commutative, unital, and distribute"),
    prop!(nu_monotone_mul, "semiring", "ν is multiplicative and ν(a+b) ν-dominates ν(a)+ν(b)"),
    prop!(surpass_order, "semiring", "⊨ is reflexive, transitive, antisymmetric on tangibles, and compatible with + and ·"),
    prop!(collapse_hom, "semiring", "collapse: symmetrized pairs → scalars is a semiring homomorphism"),
    prop!(sym_surpass_collapse, "semiring", "p ≽∘ q implies collapse(p) ⊨ collapse(q)"),
    prop!(mat_assoc_distrib, "matrix", "matrix product is associative and distributes over addition"),
    prop!(mat_order_unit, "matrix", "B ≥ν I implies AB ≥ν A and BA ≥ν A"),
    prop!(mat_surpass_mul_monotone, "matrix", "A₁ ⊨ A₂ and B₁ ⊨ B₂ imply A₁B₁ ⊨ A₂B₂"),
    prop!(perm_inverse_product, "matrix", "P_π·P_{π⁻¹} = I, exhaustively for n ≤ 4 and sampled for n ∈ {5,6}"),
    prop!(per_mul_surpass, "determinant", "per(AB) ⊨ per(A)·per(B)"),
    prop!(per_mul_genperm, "determinant", "per(AB) = per(A)·per(B) = per(BA) when B is a generalized permutation"),
    prop!(bid_mul_sym_surpass, "determinant", "bid(AB) ≽∘ bid(A)·bid(B)"),
    prop!(uniform_dominant_product, "determinant", "uniformly dominant permutations compose under products with multiplicative permanents"),
    prop!(per_transpose, "determinant", "per(Aᵗ) = per(A)"),
    prop!(adj_mul_surpass, "nabla", "adj(AB) ⊨ adj(B)·adj(A)"),
    prop!(adj_mul_genperm, "nabla", "adj(AB) = adj(B)·adj(A) when B is a generalized permutation"),
    prop!(quasi_idempotent, "nabla", "I^l and I^r are idempotent for nonsingular A"),
    prop!(quasi_per_unit, "nabla", "per(I^l) and per(I^r) are ν-equal to 𝟙"),
    prop!(nabla_left_right_swap, "nabla", "I^l of A^∇ equals I^r of A and vice versa"),
    prop!(nabla_sandwich, "nabla", "A^∇AA^∇ is ν-equal to A^∇ and ghost-surpasses it"),
    prop!(nabla2_surpass, "nabla", "A^∇∇ ⊨ A, and ∇ preserves definite and strictly normal"),
    prop!(reversible_quasi_identity, "nabla", "reversible A with nonsingular core make the core a quasi-identity"),
    prop!(core_tilde_nabla, "nabla", "the twisted core of A equals the core of A^∇"),
    prop!(two_by_two_reversible, "nabla", "2×2 with per = 𝟙 and nonsingular I^l·I^r is reversible"),
    prop!(sl1_closure, "classify", "the unit-track class is closed under products and under ∇"),
    prop!(strictly_normal_monoid, "classify", "strictly normal matrices form a monoid closed under ∇ and transpose, with per ν-equal 𝟙"),
    prop!(perij_maximality, "classify", "every sampled per-𝟙 matrix outside the unit-track class admits a verified singularizing witness"),
    prop!(bqsl2_generation, "classify", "2×2 ghost-permanent matrices with tied cross products split into the two standard generators"),
    prop!(genmon1_witness, "classify", "the 4×4 two-track band lies outside SL₄ but inside the ghost-surpassing class, with the no-split pattern"),
    prop!(s_left_right_closure, "monoid", "I^l·X absorbs I^l, is closed under right multiplication, and I^l/I^r act as one-sided units"),
    prop!(reversible_unique_unit, "monoid", "for reversible A the core is an idempotent two-sided unit of the attached semigroup"),
    prop!(strictnormal_conj_closed, "monoid", "when I^l is strictly normal, conjugates of strictly normal matrices are product-closed"),
    prop!(steinberg_relations, "elementary", "the rewriting relations hold as matrix identities, including the ab <ν 𝟙 guard"),
    prop!(ed_exact, "elementary", "the correction word reproduces A^∇∇ by exact equality"),
    prop!(sns_flip, "elementary", "the singularizing Gaussian flips the definite part to singular with per exactly 𝟙^ν"),
    prop!(bridge_exact, "elementary", "the bridge equation closes exactly for every sampled nonsingular pair"),
    prop!(oracle_agreement, "oracle", "brute-force and primary implementations agree on per, bid, adjoint, and dominant sets"),
];

// Helpers shared by the runners. ------------------------------------------

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> StdResult<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

fn ok<T>(r: Result<T>) -> StdResult<T, String> {
    r.map_err(|e| format!("unexpected library error: {e}"))
}

/// A pair `(a, b)` with `a ⊨ b` guaranteed by construction.
fn surpassing_scalar(rng: &mut ChaCha8Rng, b: TropElem) -> TropElem {
    if rng.gen_bool(0.4) {
        return b;
    }
    match b.value() {
        None => TropElem::Ghost(rat(rng.gen_range(-DEFAULT_RANGE..=DEFAULT_RANGE), 1)),
        Some(v) => TropElem::Ghost(v + rat(rng.gen_range(0..=4), 1)),
    }
}

/// A scalar `c` with `a ⊨ c` guaranteed by construction.
fn surpassed_scalar(rng: &mut ChaCha8Rng, a: TropElem) -> TropElem {
    if !a.is_ghost() {
        return a;
    }
    let v = a.value().expect("ghost has a value") - rat(rng.gen_range(0..=4), 1);
    match rng.gen_range(0..3) {
        0 => TropElem::Zero,
        1 => TropElem::Tangible(v),
        _ => TropElem::Ghost(v),
    }
}

fn surpassing_matrix(rng: &mut ChaCha8Rng, below: &Matrix) -> Matrix {
    Matrix::from_fn(below.n(), |i, j| surpassing_scalar(rng, below.get(i, j)))
}

// Semiring properties. ------------------------------------------------------

fn scalar_ring_axioms(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let (a, b, c) = (
        general_scalar(rng, DEFAULT_RANGE),
        general_scalar(rng, DEFAULT_RANGE),
        general_scalar(rng, DEFAULT_RANGE),
    );
    let ctx = || format!("a={a} b={b} c={c}");
    ensure((a + b) + c == a + (b + c), || format!("add assoc: {}", ctx()))?;
    ensure(a + b == b + a, || format!("add comm: {}", ctx()))?;
    ensure((a * b) * c == a * (b * c), || format!("mul assoc: {}", ctx()))?;
    ensure(a * b == b * a, || format!("mul comm: {}", ctx()))?;
    ensure(a * (b + c) == a * b + a * c, || format!("distributivity: {}", ctx()))?;
    ensure(a + TropElem::Zero == a, || format!("additive unit: {}", ctx()))?;
    ensure(a * TropElem::one() == a, || format!("multiplicative unit: {}", ctx()))?;
    ensure(a * TropElem::Zero == TropElem::Zero, || format!("absorbing zero: {}", ctx()))
}

fn nu_monotone_mul(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let (a, b) = (general_scalar(rng, DEFAULT_RANGE), general_scalar(rng, DEFAULT_RANGE));
    ensure((a * b).nu() == a.nu() * b.nu(), || format!("ν(ab) ≠ ν(a)ν(b): a={a} b={b}"))?;
    ensure((a + b).nu().nu_ge(&(a.nu() + b.nu())), || {
        format!("ν(a+b) fails to ν-dominate ν(a)+ν(b): a={a} b={b}")
    })
}

fn surpass_order(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let c = general_scalar(rng, DEFAULT_RANGE);
    let b = surpassing_scalar(rng, c);
    let a = surpassing_scalar(rng, b);
    ensure(a.ghost_surpass(&a), || format!("reflexivity: a={a}"))?;
    ensure(a.ghost_surpass(&b) && b.ghost_surpass(&c), || {
        format!("constructed chain broke: a={a} b={b} c={c}")
    })?;
    ensure(a.ghost_surpass(&c), || format!("transitivity: a={a} b={b} c={c}"))?;
    let (t1, t2) = (nonzero_tangible(rng, 2), nonzero_tangible(rng, 2));
    if t1.ghost_surpass(&t2) && t2.ghost_surpass(&t1) {
        ensure(t1 == t2, || format!("tangible antisymmetry: {t1} vs {t2}"))?;
    }
    let d = general_scalar(rng, DEFAULT_RANGE);
    let c2 = surpassing_scalar(rng, d);
    let down_b = surpassed_scalar(rng, a);
    ensure((a + c2).ghost_surpass(&(down_b + d)), || {
        format!("additive compatibility: a={a} ⊨ {down_b}, c={c2} ⊨ {d}")
    })?;
    ensure((a * c2).ghost_surpass(&(down_b * d)), || {
        format!("multiplicative compatibility: a={a} ⊨ {down_b}, c={c2} ⊨ {d}")
    })
}

fn collapse_hom(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let p = SymPair::new(general_scalar(rng, DEFAULT_RANGE), general_scalar(rng, DEFAULT_RANGE));
    let q = SymPair::new(general_scalar(rng, DEFAULT_RANGE), general_scalar(rng, DEFAULT_RANGE));
    ensure((p * q).collapse() == p.collapse() * q.collapse(), || {
        format!("collapse not multiplicative on {p:?}, {q:?}")
    })?;
    ensure((p + q).collapse() == p.collapse() + q.collapse(), || {
        format!("collapse not additive on {p:?}, {q:?}")
    })
}

fn sym_surpass_collapse(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let q = SymPair::new(general_scalar(rng, DEFAULT_RANGE), general_scalar(rng, DEFAULT_RANGE));
    let v = rat(rng.gen_range(-DEFAULT_RANGE..=DEFAULT_RANGE), 1);
    let flavored = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.5) {
            TropElem::Tangible(v)
        } else {
            TropElem::Ghost(v)
        }
    };
    let z = SymPair::new(flavored(rng), flavored(rng));
    let p = q + z;
    ensure(p.sym_surpass(&q), || format!("constructed ≽∘ pair rejected: {p:?} vs {q:?}"))?;
    ensure(p.collapse().ghost_surpass(&q.collapse()), || {
        format!("collapse lost the order: {p:?} vs {q:?}")
    })?;
    // And on unconstrained pairs, whenever the relation happens to hold.
    let r = SymPair::new(general_scalar(rng, DEFAULT_RANGE), general_scalar(rng, DEFAULT_RANGE));
    if r.sym_surpass(&q) {
        ensure(r.collapse().ghost_surpass(&q.collapse()), || {
            format!("collapse lost the order: {r:?} vs {q:?}")
        })?;
    }
    Ok(())
}

// Matrix properties. ---------------------------------------------------------

fn mat_assoc_distrib(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(1..=5);
    let a = general_matrix(rng, n, DEFAULT_RANGE);
    let b = general_matrix(rng, n, DEFAULT_RANGE);
    let c = general_matrix(rng, n, DEFAULT_RANGE);
    let left = ok(ok(a.try_mul(&b))?.try_mul(&c))?;
    let right = ok(a.try_mul(&ok(b.try_mul(&c))?))?;
    ensure(left == right, || format!("associativity failed at n={n}"))?;
    let d1 = ok(a.try_mul(&ok(b.try_add(&c))?))?;
    let d2 = ok(ok(a.try_mul(&b))?.try_add(&ok(a.try_mul(&c))?))?;
    ensure(d1 == d2, || format!("distributivity failed at n={n}"))
}

fn mat_order_unit(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(1..=5);
    let a = general_matrix(rng, n, DEFAULT_RANGE);
    let b = ok(general_matrix(rng, n, DEFAULT_RANGE).try_add(&Matrix::identity(n)))?;
    let ab = ok(a.try_mul(&b))?;
    let ba = ok(b.try_mul(&a))?;
    ensure(ok(a.nu_le(&ab))?, || format!("AB ≥ν A failed at n={n}"))?;
    ensure(ok(a.nu_le(&ba))?, || format!("BA ≥ν A failed at n={n}"))
}

fn mat_surpass_mul_monotone(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(1..=5);
    let a2 = general_matrix(rng, n, DEFAULT_RANGE);
    let b2 = general_matrix(rng, n, DEFAULT_RANGE);
    let a1 = surpassing_matrix(rng, &a2);
    let b1 = surpassing_matrix(rng, &b2);
    ensure(ok(a1.surpasses(&a2))? && ok(b1.surpasses(&b2))?, || {
        "constructed surpassing pair rejected".to_string()
    })?;
    let p1 = ok(a1.try_mul(&b1))?;
    let p2 = ok(a2.try_mul(&b2))?;
    ensure(ok(p1.surpasses(&p2))?, || format!("products lost ⊨ at n={n}"))
}

fn perm_inverse_product(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    for n in 1..=4usize {
        let mut bad = None;
        walk_perms(n, |images| {
            let pi = Perm::from_images(images.to_vec()).expect("permutation");
            let prod = Matrix::permutation(&pi)
                .try_mul(&Matrix::permutation(&pi.inverse()))
                .expect("same size");
            if !prod.is_identity() && bad.is_none() {
                bad = Some(pi);
            }
        });
        if let Some(pi) = bad {
            return Err(format!("P·P⁻¹ ≠ I for {pi} at n={n}"));
        }
    }
    let n = rng.gen_range(5..=6);
    let pi = random_perm(rng, n);
    let prod = ok(Matrix::permutation(&pi).try_mul(&Matrix::permutation(&pi.inverse())))?;
    ensure(prod.is_identity(), || format!("P·P⁻¹ ≠ I for sampled {pi} at n={n}"))
}

// Determinant properties. -----------------------------------------------------

fn per_mul_surpass(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(1..=5);
    let a = general_matrix(rng, n, DEFAULT_RANGE);
    let b = general_matrix(rng, n, DEFAULT_RANGE);
    let lhs = ok(per(&ok(a.try_mul(&b))?))?;
    let rhs = ok(per(&a))? * ok(per(&b))?;
    ensure(lhs.ghost_surpass(&rhs), || {
        format!("per(AB) = {lhs} fails to surpass per(A)per(B) = {rhs} at n={n}")
    })
}

fn per_mul_genperm(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(1..=5);
    let a = general_matrix(rng, n, DEFAULT_RANGE);
    let b = random_genperm(rng, n, DEFAULT_RANGE).to_matrix();
    let pa = ok(per(&a))?;
    let pb = ok(per(&b))?;
    let ab = ok(per(&ok(a.try_mul(&b))?))?;
    let ba = ok(per(&ok(b.try_mul(&a))?))?;
    ensure(ab == pa * pb && ba == pa * pb, || {
        format!("per not multiplicative against a generalized permutation: {ab} / {ba} vs {}", pa * pb)
    })
}

fn bid_mul_sym_surpass(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(1..=5);
    let a = general_matrix(rng, n, DEFAULT_RANGE);
    let b = general_matrix(rng, n, DEFAULT_RANGE);
    let lhs = ok(bid(&ok(a.try_mul(&b))?))?.as_sym_pair();
    let rhs = ok(bid(&a))?.as_sym_pair() * ok(bid(&b))?.as_sym_pair();
    ensure(lhs.sym_surpass(&rhs), || {
        format!("bid(AB) = {lhs:?} fails ≽∘ against bid(A)bid(B) = {rhs:?} at n={n}")
    })
}

/// A matrix whose permutation `pi` is uniformly dominant: one tangible
/// weight on the track, everything else far below it.
fn uniform_dominant_matrix(rng: &mut ChaCha8Rng, n: usize, pi: &Perm) -> Matrix {
    let w = nonzero_tangible(rng, DEFAULT_RANGE);
    let floor = 17 * (n as i128);
    Matrix::from_fn(n, |i, j| {
        if j == pi.apply(i) {
            w
        } else {
            TropElem::Tangible(rat(rng.gen_range(-floor - DEFAULT_RANGE..=-floor), 1))
        }
    })
}

fn uniform_dominant_product(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(2..=5);
    let p1 = random_perm(rng, n);
    let p2 = random_perm(rng, n);
    let a1 = uniform_dominant_matrix(rng, n, &p1);
    let a2 = uniform_dominant_matrix(rng, n, &p2);
    ensure(
        ok(dominance(&a1))?.uniformly_dominant.as_ref() == Some(&p1),
        || "construction failed to be uniformly dominant".to_string(),
    )?;
    let product = ok(a1.try_mul(&a2))?;
    let composed = p2.compose(&p1);
    let report = ok(dominance(&product))?;
    ensure(report.uniformly_dominant.as_ref() == Some(&composed), || {
        format!("product lost uniform dominance at n={n}")
    })?;
    let lhs = ok(per(&product))?;
    let rhs = ok(per(&a1))? * ok(per(&a2))?;
    ensure(lhs == rhs, || format!("per not multiplicative on uniform pair: {lhs} vs {rhs}"))
}

fn per_transpose(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(1..=5);
    let a = general_matrix(rng, n, DEFAULT_RANGE);
    let lhs = ok(per(&a.transpose()))?;
    let rhs = ok(per(&a))?;
    ensure(lhs == rhs, || format!("per(Aᵗ) = {lhs} ≠ per(A) = {rhs} at n={n}"))
}

// Quasi-inverse properties. ----------------------------------------------------

fn adj_mul_surpass(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(1..=4);
    let a = general_matrix(rng, n, DEFAULT_RANGE);
    let b = general_matrix(rng, n, DEFAULT_RANGE);
    let lhs = ok(adj(&ok(a.try_mul(&b))?))?;
    let rhs = ok(ok(adj(&b))?.try_mul(&ok(adj(&a))?))?;
    ensure(ok(lhs.surpasses(&rhs))?, || format!("adj(AB) ⊭ adj(B)adj(A) at n={n}"))
}

fn adj_mul_genperm(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(1..=4);
    let a = general_matrix(rng, n, DEFAULT_RANGE);
    let b = random_genperm(rng, n, DEFAULT_RANGE).to_matrix();
    let lhs = ok(adj(&ok(a.try_mul(&b))?))?;
    let rhs = ok(ok(adj(&b))?.try_mul(&ok(adj(&a))?))?;
    ensure(lhs == rhs, || format!("adj(AB) ≠ adj(B)adj(A) for a generalized permutation at n={n}"))
}

fn quasi_idempotent(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(1..=4);
    let a = nonsingular_matrix(rng, n, DEFAULT_RANGE);
    let pack = ok(quasi_pack(&a))?;
    ensure(is_idempotent(&pack.left), || format!("I^l not idempotent for\n{a}"))?;
    ensure(is_idempotent(&pack.right), || format!("I^r not idempotent for\n{a}"))
}

fn quasi_per_unit(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(1..=4);
    let a = nonsingular_matrix(rng, n, DEFAULT_RANGE);
    let pack = ok(quasi_pack(&a))?;
    let one = TropElem::one();
    ensure(ok(per(&pack.left))?.nu_eq(&one), || format!("per(I^l) not ν-𝟙 for\n{a}"))?;
    ensure(ok(per(&pack.right))?.nu_eq(&one), || format!("per(I^r) not ν-𝟙 for\n{a}"))
}

fn nabla_left_right_swap(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(1..=4);
    let a = nonsingular_matrix(rng, n, DEFAULT_RANGE);
    let pack = ok(quasi_pack(&a))?;
    let pack_nb = ok(quasi_pack(&ok(nabla(&a))?))?;
    ensure(pack_nb.left == pack.right, || format!("I^l(A^∇) ≠ I^r(A) for\n{a}"))?;
    ensure(pack_nb.right == pack.left, || format!("I^r(A^∇) ≠ I^l(A) for\n{a}"))
}

fn nabla_sandwich(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(1..=4);
    let a = nonsingular_matrix(rng, n, DEFAULT_RANGE);
    let nb = ok(nabla(&a))?;
    let sandwich = ok(ok(nb.try_mul(&a))?.try_mul(&nb))?;
    // The two directions pin the sandwich down to "ν-equal and ghost-
    // surpassing": it can only add ghost layers on top of A^∇, never move
    // a ν-value.
    ensure(ok(sandwich.nu_le(&nb))?, || format!("A^∇ ≥ν A^∇AA^∇ failed for\n{a}"))?;
    ensure(ok(sandwich.surpasses(&nb))?, || {
        format!("A^∇AA^∇ ⊨ A^∇ failed for\n{a}")
    })
}

fn nabla2_surpass(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(1..=4);
    let a = nonsingular_matrix(rng, n, DEFAULT_RANGE);
    ensure(ok(ok(nabla2(&a))?.surpasses(&a))?, || format!("A^∇∇ ⊭ A for\n{a}"))?;
    let d = definite_matrix(rng, n, DEFAULT_RANGE);
    ensure(ok(is_definite(&ok(nabla(&d))?))?, || format!("∇ lost definiteness for\n{d}"))?;
    let s = strictly_normal_matrix(rng, n, DEFAULT_RANGE);
    ensure(is_strictly_normal(&ok(nabla(&s))?), || {
        format!("∇ lost strict normality for\n{s}")
    })
}

fn reversible_quasi_identity(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(2..=4);
    let a = if rng.gen_bool(0.3) {
        simple_quasi_identity(rng, n, DEFAULT_RANGE)
    } else {
        nonsingular_matrix(rng, n, DEFAULT_RANGE)
    };
    let pack = ok(quasi_pack(&a))?;
    if pack.reversible && ok(classify_singularity(&pack.core))? == Singularity::Nonsingular {
        ensure(ok(is_quasi_identity(&pack.core))?, || {
            format!("reversible core is not a quasi-identity for\n{a}")
        })?;
    }
    Ok(())
}

fn core_tilde_nabla(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(1..=4);
    let a = nonsingular_matrix(rng, n, DEFAULT_RANGE);
    let pack = ok(quasi_pack(&a))?;
    let pack_nb = ok(quasi_pack(&ok(nabla(&a))?))?;
    ensure(pack.core_tilde == pack_nb.core, || {
        format!("twisted core of A differs from core of A^∇ for\n{a}")
    })
}

fn two_by_two_reversible(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let raw = nonsingular_matrix(rng, 2, DEFAULT_RANGE);
    let p = ok(per(&raw))?;
    let scale = TropElem::Tangible(-p.value().expect("tangible permanent") / 2);
    let a = raw.scalar_mul(scale);
    ensure(ok(per(&a))? == TropElem::one(), || "normalization failed".to_string())?;
    let pack = ok(quasi_pack(&a))?;
    let product = ok(pack.left.try_mul(&pack.right))?;
    if ok(classify_singularity(&product))? == Singularity::Nonsingular {
        ensure(pack.reversible, || {
            format!("2×2 with per 𝟙 and nonsingular I^l·I^r not reversible:\n{a}")
        })?;
    }
    Ok(())
}

// Classification properties. ---------------------------------------------------

fn sl1_closure(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(2..=5);
    let a = sl1_matrix(rng, n, DEFAULT_RANGE);
    let b = sl1_matrix(rng, n, DEFAULT_RANGE);
    ensure(in_sl1(&a) && in_sl1(&b), || "construction left the unit-track class".to_string())?;
    ensure(in_sl1(&ok(a.try_mul(&b))?), || format!("product left the unit-track class:\n{a}\n{b}"))?;
    ensure(in_sl1(&ok(nabla(&a))?), || format!("∇ left the unit-track class for\n{a}"))
}

fn strictly_normal_monoid(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(2..=5);
    let a = strictly_normal_matrix(rng, n, DEFAULT_RANGE);
    let b = strictly_normal_matrix(rng, n, DEFAULT_RANGE);
    let product = ok(a.try_mul(&b))?;
    ensure(is_strictly_normal(&product), || format!("product not strictly normal:\n{a}\n{b}"))?;
    ensure(ok(classify_singularity(&product))? == Singularity::Nonsingular, || {
        "strictly normal product not nonsingular".to_string()
    })?;
    ensure(ok(per(&product))?.nu_eq(&TropElem::one()), || {
        "strictly normal product permanent not ν-𝟙".to_string()
    })?;
    ensure(is_strictly_normal(&ok(nabla(&a))?), || format!("∇ left the class for\n{a}"))?;
    ensure(is_strictly_normal(&a.transpose()), || format!("transpose left the class for\n{a}"))
}

fn perij_maximality(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(2..=4);
    let mut m = sl_matrix(rng, n, DEFAULT_RANGE);
    for _ in 0..16 {
        if !in_sl1(&m) {
            break;
        }
        m = sl_matrix(rng, n, DEFAULT_RANGE);
    }
    if in_sl1(&m) {
        return Ok(());
    }
    let (u, mode) = ok(perij_witness(&m))?;
    let sandwich = match mode {
        WitnessMode::Mum => ok(ok(m.try_mul(&u))?.try_mul(&m))?,
        WitnessMode::UtMu => ok(ok(u.transpose().try_mul(&m))?.try_mul(&u))?,
    };
    ensure(
        ok(classify_singularity(&sandwich))? == Singularity::SymmetricallySingular,
        || format!("witness product not symmetrically singular for\n{m}"),
    )
}

fn bqsl2_generation(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    // Tied cross products with ν(u) + ν(v') > 0 so the corner survives.
    let u = nonzero_tangible(rng, DEFAULT_RANGE);
    let up = nonzero_tangible(rng, DEFAULT_RANGE);
    let ui = ok(u.inv())?;
    let vv = rat(rng.gen_range(1..=DEFAULT_RANGE), 1) - up.value().expect("tangible");
    let v = TropElem::Tangible(vv);
    let vp = up * v * ui;
    let m = ok(Matrix::from_rows(vec![vec![u, up], vec![v, vp]]))?;
    let lower = ok(Matrix::from_rows(vec![
        vec![TropElem::one(), TropElem::Zero],
        vec![v * ui, TropElem::one()],
    ]))?;
    let upper = ok(Matrix::from_rows(vec![
        vec![u, up],
        vec![TropElem::Zero, ui],
    ]))?;
    ensure(ok(lower.try_mul(&upper))? == m, || {
        format!("two-factor split failed for u={u} u'={up} v={v} v'={vp}")
    })?;
    for f in [&lower, &upper] {
        ensure(ok(per(f))? == TropElem::one(), || "factor left SL₂".to_string())?;
    }
    let (_, in_bqsl, _) = ok(group_membership(&m))?;
    ensure(in_bqsl, || format!("constructed matrix not in the ghost-surpassing class:\n{m}"))
}

fn genmon1_witness(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let mut vals: Vec<Rat> =
        (0..3).map(|_| rat(rng.gen_range(-DEFAULT_RANGE..=DEFAULT_RANGE), 1)).collect();
    let sum: Rat = vals.iter().copied().fold(rat(0, 1), |a, b| a + b);
    vals.push(-sum);
    let n = 4;
    let mut m = Matrix::identity(n);
    for (k, &v) in vals.iter().enumerate() {
        m.set(k, (k + 1) % n, TropElem::Tangible(v));
    }
    let b = ok(bid(&m))?;
    let one = TropElem::one();
    ensure(b.per_plus == one && b.per_minus == one, || {
        format!("band bideterminant not (𝟙, 𝟙):\n{m}")
    })?;
    ensure(b.per == one.nu(), || "band permanent not 𝟙^ν".to_string())?;
    let (in_sl, in_bqsl, in_qsl) = ok(group_membership(&m))?;
    ensure(!in_sl && in_bqsl && !in_qsl, || format!("band memberships wrong:\n{m}"))?;
    ensure(nonfact_pattern(&m), || format!("band no-split pattern not detected:\n{m}"))?;
    ensure(!in_sl1(&m), || "band unexpectedly unit-track".to_string())
}

// Semigroup properties. ----------------------------------------------------------

fn s_left_right_closure(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(1..=4);
    let a = nonsingular_matrix(rng, n, DEFAULT_RANGE);
    let m = general_matrix(rng, n, DEFAULT_RANGE);
    let right_factor = general_matrix(rng, n, DEFAULT_RANGE);
    let pack = ok(quasi_pack(&a))?;
    let (il, ir) = (&pack.left, &pack.right);
    let x = ok(il.try_mul(&m))?;
    ensure(ok(il.try_mul(&x))? == x, || format!("I^l·X ≠ X for X = I^l·M:\n{a}"))?;
    let y = ok(x.try_mul(&right_factor))?;
    ensure(ok(il.try_mul(&y))? == y, || {
        format!("left class not closed under right multiplication:\n{a}")
    })?;
    let z = ok(ok(il.try_mul(&m))?.try_mul(ir))?;
    ensure(ok(il.try_mul(&z))? == z, || format!("I^l fails as left unit:\n{a}"))?;
    ensure(ok(z.try_mul(ir))? == z, || format!("I^r fails as right unit:\n{a}"))
}

fn reversible_unique_unit(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(2..=4);
    let a = if rng.gen_bool(0.4) {
        simple_quasi_identity(rng, n, DEFAULT_RANGE)
    } else {
        nonsingular_matrix(rng, n, DEFAULT_RANGE)
    };
    let pack = ok(quasi_pack(&a))?;
    if !pack.reversible {
        return Ok(());
    }
    let core = &pack.core;
    ensure(is_idempotent(core), || format!("reversible core not idempotent:\n{a}"))?;
    let m = general_matrix(rng, n, DEFAULT_RANGE);
    let x = ok(ok(core.try_mul(&m))?.try_mul(core))?;
    ensure(ok(core.try_mul(&x))? == x, || format!("core fails as left unit:\n{a}"))?;
    ensure(ok(x.try_mul(core))? == x, || format!("core fails as right unit:\n{a}"))
}

fn strictnormal_conj_closed(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(2..=4);
    let a = strictly_normal_matrix(rng, n, DEFAULT_RANGE);
    let pack = ok(quasi_pack(&a))?;
    ensure(is_strictly_normal(&pack.left), || {
        format!("I^l of a strictly normal matrix left the class:\n{a}")
    })?;
    let nb = ok(nabla(&a))?;
    let j1 = strictly_normal_matrix(rng, n, DEFAULT_RANGE);
    let j2 = strictly_normal_matrix(rng, n, DEFAULT_RANGE);
    let conj = |j: &Matrix| ok(ok(nb.try_mul(j))?.try_mul(&a));
    let x1 = conj(&j1)?;
    let x2 = conj(&j2)?;
    let j3 = ok(ok(j1.try_mul(&pack.left))?.try_mul(&j2))?;
    ensure(is_strictly_normal(&j3), || "composite conjugator left the class".to_string())?;
    ensure(ok(x1.try_mul(&x2))? == conj(&j3)?, || {
        format!("conjugate product is not the conjugate of J₁·I^l·J₂:\n{a}")
    })
}

// Elementary properties. ----------------------------------------------------------

fn steinberg_relations(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(3..=5);
    let any_nonzero = |rng: &mut ChaCha8Rng| {
        let v = rat(rng.gen_range(-DEFAULT_RANGE..=DEFAULT_RANGE), 1);
        if rng.gen_bool(GHOST_P) {
            TropElem::Ghost(v)
        } else {
            TropElem::Tangible(v)
        }
    };
    let gau = |i: usize, j: usize, a: TropElem| {
        ElemGen::gaussian(i, j, a).expect("distinct indices")
    };
    let prod = |gens: &[ElemGen]| -> StdResult<Matrix, String> {
        ok(word_product(&crate::elementary::ElemWord(gens.to_vec()), n))
    };
    let mut picks: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        picks.swap(i, j);
    }
    let mut s = [picks[0], picks[1], picks[2]];
    s.sort_unstable();
    let (x, y, z) = (s[0], s[1], s[2]);
    let (a, b) = (any_nonzero(rng), any_nonzero(rng));
    // Shared column, distinct rows: disjoint positions, so they commute.
    ensure(
        prod(&[gau(x, y, a), gau(z, y, b)])? == prod(&[gau(z, y, b), gau(x, y, a)])?,
        || "disjoint generators failed to commute".to_string(),
    )?;
    // Chain with the third index below both: E_{y,z}(a)E_{z,x}(b).
    ensure(
        prod(&[gau(y, z, a), gau(z, x, b)])?
            == prod(&[gau(y, x, a * b), gau(z, x, b), gau(y, z, a)])?,
        || "low-chain relation failed".to_string(),
    )?;
    // Chain with the third index between: E_{x,z}(a)E_{z,y}(b).
    ensure(
        prod(&[gau(x, z, a), gau(z, y, b)])?
            == prod(&[gau(z, y, b), gau(x, z, a), gau(x, y, a * b)])?,
        || "mid-chain relation failed".to_string(),
    )?;
    // Reverse pair: commutes exactly below 𝟙.
    let va = a.value().expect("nonzero");
    let small = TropElem::Tangible(-va - rat(rng.gen_range(1..=4), 1));
    ensure(
        prod(&[gau(x, y, a), gau(y, x, small)])? == prod(&[gau(y, x, small), gau(x, y, a)])?,
        || "guarded reverse pair failed to commute".to_string(),
    )?;
    let big = TropElem::Tangible(-va + rat(rng.gen_range(0..=4), 1));
    ensure(
        prod(&[gau(x, y, a), gau(y, x, big)])? != prod(&[gau(y, x, big), gau(x, y, a)])?,
        || "reverse pair at or above 𝟙 unexpectedly commuted".to_string(),
    )
}

fn ed_exact(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(2..=4);
    let a = nonsingular_matrix(rng, n, DEFAULT_RANGE);
    let word = ok(ed_factor(&a))?;
    for g in word.gens() {
        ensure(matches!(g, ElemGen::Gaussian { .. }), || "non-Gaussian in word".to_string())?;
    }
    let lhs = ok(ok(word_product(&word, n))?.try_mul(&a))?;
    ensure(lhs == ok(nabla2(&a))?, || format!("word·A ≠ A^∇∇ for\n{a}"))
}

fn sns_flip(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(2..=4);
    let mut a = sl_matrix(rng, n, DEFAULT_RANGE);
    for _ in 0..16 {
        if GenPerm::from_matrix(&a).is_none() {
            break;
        }
        a = sl_matrix(rng, n, DEFAULT_RANGE);
    }
    if GenPerm::from_matrix(&a).is_some() {
        return Ok(());
    }
    let (gen, _, part) = ok(sns_witness_with_part(&a))?;
    ensure(ok(classify_singularity(&part))? == Singularity::Nonsingular, || {
        "definite part not nonsingular".to_string()
    })?;
    let product = ok(ok(gen.to_matrix(n))?.try_mul(&part))?;
    ensure(ok(classify_singularity(&product))?.is_singular(), || {
        format!("Gaussian failed to flip to singular:\n{a}")
    })?;
    ensure(ok(per(&product))? == TropElem::one().nu(), || {
        format!("flipped permanent is not exactly 𝟙^ν:\n{product}")
    })
}

fn bridge_exact(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(2..=4);
    let a = nonsingular_matrix(rng, n, DEFAULT_RANGE);
    let b = nonsingular_matrix(rng, n, DEFAULT_RANGE);
    let br = ok(bridge(&a, &b))?;
    let lhs = ok(ok(ok(word_product(&br.e1, n))?.try_mul(&a))?.try_mul(&br.e2.matrix))?;
    let rhs = ok(ok(br.e3.matrix.try_mul(&b))?.try_mul(&ok(word_product(&br.e4, n))?))?;
    ensure(lhs == br.common && rhs == br.common, || {
        format!("bridge equation broke for\n{a}\nand\n{b}")
    })?;
    for side in [&br.e2, &br.e3] {
        if let Some(w) = &side.word {
            ensure(ok(word_product(w, n))? == side.matrix, || {
                "decomposed side word does not reproduce its matrix".to_string()
            })?;
        }
    }
    Ok(())
}

// Oracle agreement. ---------------------------------------------------------------

fn oracle_agreement(seed: u64) -> StdResult<(), String> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(1..=6);
    let a = general_matrix(rng, n, DEFAULT_RANGE);
    let (bper, bbid, bdom) = ok(brute_force_per(&a))?;
    ensure(bper == ok(per(&a))?, || format!("permanent mismatch on\n{a}"))?;
    ensure(bbid == ok(bid(&a))?.as_sym_pair(), || format!("bideterminant mismatch on\n{a}"))?;
    ensure(bdom == ok(dominance(&a))?.dominant, || format!("dominant-set mismatch on\n{a}"))?;
    // Deleting the only row and column leaves the empty product 𝟙.
    let brute_adj = if n == 1 {
        Matrix::identity(1)
    } else {
        Matrix::from_fn(n, |i, j| laplace_per(&a.minor(j, i)))
    };
    ensure(brute_adj == ok(adj(&a))?, || format!("adjoint mismatch on\n{a}"))
}
