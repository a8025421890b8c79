//! Tropical permanent, bideterminant, dominant-permutation analysis, and a
//! maximum-weight-assignment fast path.
//!
//! The permanent `per(A) = Σ_π Π_i a_{i,π(i)}` is the tropical determinant:
//! the value of the optimal assignment problem on the ν-values, with ghosts
//! recording ties between assignments. Splitting the sum by permutation
//! parity gives the bideterminant `(per⁺, per⁻)`; a matrix is symmetrically
//! singular when the two halves are ν-equal, i.e. the best even and best odd
//! assignments tie.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Perm};
use crate::semiring::{Rat, SymPair, TropElem};

/// Direct permutation enumeration is used up to this size; beyond it,
/// [`per_assignment`] is the documented path (permanent only — the even/odd
/// split has no assignment-style shortcut).
pub const ENUMERATION_BOUND: usize = 10;

/// Size cap for the subset-DP assignment solver.
pub const ASSIGNMENT_BOUND: usize = 20;

/// The even/odd split of the permanent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BidResult {
    /// Sum over even permutations.
    pub per_plus: TropElem,
    /// Sum over odd permutations.
    pub per_minus: TropElem,
    /// The full permanent; always equals `per_plus + per_minus`.
    pub per: TropElem,
}

impl BidResult {
    /// View the split as a symmetrized-semiring element.
    pub fn as_sym_pair(&self) -> SymPair {
        SymPair::new(self.per_plus, self.per_minus)
    }

    /// The best even and best odd assignments tie in ν-value.
    pub fn symmetrically_singular(&self) -> bool {
        self.per_plus.nu_eq(&self.per_minus)
    }
}

/// Supertropical singularity classes. Symmetric singularity is the stronger
/// condition: every symmetrically singular matrix is singular.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Singularity {
    /// `per(A)` is tangible: a unique dominant permutation with an
    /// all-tangible track.
    Nonsingular,
    /// `per(A)` is ghost or `𝟘`, but the even/odd halves do not tie.
    Singular,
    /// The even and odd halves of the bideterminant are ν-equal.
    SymmetricallySingular,
}

impl Singularity {
    pub fn is_singular(&self) -> bool {
        !matches!(self, Singularity::Nonsingular)
    }
}

/// Which permutations attain the permanent, and how decisively.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominanceReport {
    /// ν-value of the permanent.
    pub value: TropElem,
    /// All permutations whose track product ν-equals the permanent,
    /// in lexicographic order.
    pub dominant: Vec<Perm>,
    /// Present exactly when `dominant` is a singleton.
    pub strictly_dominant: Option<Perm>,
    /// A strictly dominant permutation whose track entries are all equal and
    /// strictly ν-dominate the rest of their rows.
    pub uniformly_dominant: Option<Perm>,
}

fn check_enumeration_bound(a: &Matrix, op: &str) -> Result<()> {
    if a.n() > ENUMERATION_BOUND {
        return Err(Error::domain(format!(
            "{op}: n = {} exceeds the enumeration bound {ENUMERATION_BOUND}; \
             use per_assignment for the permanent of larger matrices",
            a.n()
        )));
    }
    Ok(())
}

/// Product of the track of `π` through `a`, short-circuiting on `𝟘`.
pub fn track_product(a: &Matrix, pi: &Perm) -> TropElem {
    let mut acc = TropElem::one();
    for i in 0..a.n() {
        let e = a.get(i, pi.apply(i));
        if e.is_zero() {
            return TropElem::Zero;
        }
        acc = acc * e;
    }
    acc
}

fn enumerate_bid(a: &Matrix) -> BidResult {
    let n = a.n();
    let mut plus = TropElem::Zero;
    let mut minus = TropElem::Zero;
    for images in (0..n).permutations(n) {
        let mut prod = TropElem::one();
        for (i, &j) in images.iter().enumerate() {
            let e = a.get(i, j);
            if e.is_zero() {
                prod = TropElem::Zero;
                break;
            }
            prod = prod * e;
        }
        if prod.is_zero() {
            continue;
        }
        let mut inversions = 0usize;
        for x in 0..n {
            for y in (x + 1)..n {
                if images[x] > images[y] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            plus = plus + prod;
        } else {
            minus = minus + prod;
        }
    }
    BidResult { per_plus: plus, per_minus: minus, per: plus + minus }
}

/// The tropical permanent by direct enumeration (`n ≤ 10`).
pub fn per(a: &Matrix) -> Result<TropElem> {
    check_enumeration_bound(a, "per")?;
    Ok(enumerate_bid(a).per)
}

/// The bideterminant by direct enumeration (`n ≤ 10`).
pub fn bid(a: &Matrix) -> Result<BidResult> {
    check_enumeration_bound(a, "bid")?;
    Ok(enumerate_bid(a))
}

/// Classify by the permanent and its even/odd split.
pub fn classify_singularity(a: &Matrix) -> Result<Singularity> {
    let b = bid(a)?;
    Ok(if b.symmetrically_singular() {
        Singularity::SymmetricallySingular
    } else if b.per.is_tangible() {
        Singularity::Nonsingular
    } else {
        Singularity::Singular
    })
}

/// Enumerate the dominant permutations and test strictness and uniformity.
///
/// This is a diagnostic: it always enumerates (`n ≤ 10`). A permutation is
/// dominant when its track product ν-equals the permanent; strictly dominant
/// when it is the only one; uniformly dominant when additionally its track
/// entries are all equal and each strictly ν-dominates the rest of its row.
pub fn dominance(a: &Matrix) -> Result<DominanceReport> {
    check_enumeration_bound(a, "dominance")?;
    let n = a.n();
    let value = per(a)?.nu();
    let mut dominant = Vec::new();
    for images in (0..n).permutations(n) {
        let pi = Perm::from_images(images).expect("generated permutation");
        if track_product(a, &pi).nu_eq(&value) {
            dominant.push(pi);
        }
    }
    let strictly_dominant = if dominant.len() == 1 { Some(dominant[0].clone()) } else { None };
    let uniformly_dominant = strictly_dominant.clone().filter(|pi| {
        let first = a.get(0, pi.apply(0));
        (0..n).all(|i| a.get(i, pi.apply(i)) == first)
            && (0..n).all(|i| {
                let track = a.get(i, pi.apply(i));
                (0..n).all(|j| j == pi.apply(i) || a.get(i, j).nu_lt(&track))
            })
    });
    Ok(DominanceReport { value, dominant, strictly_dominant, uniformly_dominant })
}

/// Maximum-weight assignment value over the ν-values by subset DP, with the
/// best value for rows `0..k` assigned to each k-subset of columns.
/// `forbidden` removes one edge, which is how uniqueness is probed.
fn assignment_best(a: &Matrix, forbidden: Option<(usize, usize)>) -> Vec<Option<Rat>> {
    let n = a.n();
    let mut dp: Vec<Option<Rat>> = vec![None; 1 << n];
    dp[0] = Some(Rat::from_integer(0));
    for mask in 0usize..(1 << n) {
        let Some(base) = dp[mask] else { continue };
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        for j in 0..n {
            if mask & (1 << j) != 0 || forbidden == Some((row, j)) {
                continue;
            }
            let Some(w) = a.get(row, j).value() else { continue };
            let cand = base + w;
            let next = &mut dp[mask | (1 << j)];
            if next.map_or(true, |cur| cand > cur) {
                *next = Some(cand);
            }
        }
    }
    dp
}

/// The permanent by whichever method the size admits: enumeration up to
/// `ENUMERATION_BOUND`, the assignment solver beyond it.
pub(crate) fn per_auto(a: &Matrix) -> Result<TropElem> {
    if a.n() <= ENUMERATION_BOUND {
        per(a)
    } else {
        per_assignment(a)
    }
}

/// The permanent via the optimal assignment problem (`n ≤ 20`).
///
/// The value is the best assignment weight; the result is tangible exactly
/// when the optimal assignment is unique — probed by forbidding each chosen
/// edge and re-solving — and every chosen entry is tangible.
pub fn per_assignment(a: &Matrix) -> Result<TropElem> {
    let n = a.n();
    if n > ASSIGNMENT_BOUND {
        return Err(Error::domain(format!(
            "per_assignment: n = {n} exceeds the solver bound {ASSIGNMENT_BOUND}"
        )));
    }
    let dp = assignment_best(a, None);
    let full = (1usize << n) - 1;
    let Some(best) = dp[full] else {
        return Ok(TropElem::Zero);
    };

    // Backtrack one optimal assignment (smallest column at each step, for
    // determinism).
    let mut chosen = vec![0usize; n];
    let mut mask = full;
    for row in (0..n).rev() {
        let mut found = None;
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            if let (Some(w), Some(prev)) = (a.get(row, j).value(), dp[mask ^ (1 << j)]) {
                if prev + w == dp[mask].unwrap() {
                    found = Some(j);
                    break;
                }
            }
        }
        let j = found.expect("optimal assignment backtrack");
        chosen[row] = j;
        mask ^= 1 << j;
    }

    let all_tangible = (0..n).all(|i| a.get(i, chosen[i]).is_tangible());
    let unique = (0..n).all(|i| {
        let dp_f = assignment_best(a, Some((i, chosen[i])));
        dp_f[full] != Some(best)
    });
    Ok(if unique && all_tangible { TropElem::Tangible(best) } else { TropElem::Ghost(best) })
}
