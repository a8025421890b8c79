//! Shape classes (definite / normal / strictly normal), membership in the
//! unit-permanent monoid family, factor-out decomposition into a generalized
//! permutation times a definite part, two-track nonfactorizable patterns, and
//! singularizing witnesses that separate `SL_n` from its unit-track
//! submonoid `SL_n^𝟙`.

use serde::Serialize;

use crate::determinant::{
    bid, classify_singularity, dominance, per, per_auto, DominanceReport, Singularity,
};
use crate::error::{Error, Result};
use crate::matrix::{GenPerm, Matrix, Perm};
use crate::semiring::{midpoint, rat, Rat, TropElem};

/// The three nested diagonal-dominance shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShapeClass {
    /// `𝟙` diagonal and the identity is the unique dominant permutation
    /// (equivalently `per(A) = 𝟙`).
    pub definite: bool,
    /// Definite with every off-diagonal entry `≤ν 𝟙`.
    pub normal: bool,
    /// `𝟙` diagonal with every off-diagonal entry `<ν 𝟙`.
    pub strictly_normal: bool,
}

/// Test the three shapes at once. Strict normality is syntactic; definiteness
/// additionally needs the permanent, computed by whichever method the size
/// admits.
pub fn shape_class(a: &Matrix) -> Result<ShapeClass> {
    let n = a.n();
    let one = TropElem::one();
    let diag_one = (0..n).all(|i| a.get(i, i) == one);
    let off = |strict: bool| {
        (0..n).all(|i| {
            (0..n).all(|j| {
                i == j
                    || if strict { a.get(i, j).nu_lt(&one) } else { a.get(i, j).nu_le(&one) }
            })
        })
    };
    let strictly_normal = diag_one && off(true);
    // A strictly normal matrix is definite outright (every non-identity
    // track loses strictly), which skips the permanent computation.
    let definite = diag_one && (strictly_normal || per_auto(a)? == one);
    let normal = definite && off(false);
    Ok(ShapeClass { definite, normal, strictly_normal })
}

/// `𝟙` diagonal and the identity permutation uniquely dominant.
pub fn is_definite(a: &Matrix) -> Result<bool> {
    Ok(shape_class(a)?.definite)
}

/// Definite with all off-diagonal entries `≤ν 𝟙`.
pub fn is_normal(a: &Matrix) -> Result<bool> {
    Ok(shape_class(a)?.normal)
}

/// `𝟙` diagonal, off-diagonal strictly ν-below `𝟙`. Purely syntactic.
pub fn is_strictly_normal(a: &Matrix) -> bool {
    let n = a.n();
    let one = TropElem::one();
    (0..n).all(|i| {
        a.get(i, i) == one && (0..n).all(|j| i == j || a.get(i, j).nu_lt(&one))
    })
}

/// The three nested memberships `(in_SL, in_BQSL, in_QSL∘)`:
///
/// * `SL`: `per(A) = 𝟙` exactly;
/// * `BQSL`: `per(A) ⊨ 𝟙` (tangible `𝟙`, or ghost at ν-value ≥ 0);
/// * `QSL∘`: in `SL`, or in `BQSL` with exactly one bideterminant slot
///   ν-equal to `𝟙` strictly ν-dominating the other. (A dominating ν-unit
///   slot outside `SL` is forced to be the ghost `𝟙^ν` exactly, so this
///   matches the reading "one slot equals `𝟙^ν`".)
pub fn group_membership(a: &Matrix) -> Result<(bool, bool, bool)> {
    let b = bid(a)?;
    let one = TropElem::one();
    let in_sl = b.per == one;
    let in_bqsl = b.per.ghost_surpass(&one);
    let unit_dominant =
        |x: &TropElem, y: &TropElem| x.nu_eq(&one) && x.nu_gt(y);
    let in_qsl_circ = in_sl
        || (in_bqsl
            && (unit_dominant(&b.per_plus, &b.per_minus)
                || unit_dominant(&b.per_minus, &b.per_plus)));
    Ok((in_sl, in_bqsl, in_qsl_circ))
}

/// Membership in `SL_n^𝟙`: a uniformly dominant permutation whose track
/// entries are all exactly `𝟙`.
///
/// Syntactic form (no permanent needed): every row has exactly one entry
/// with ν-value ≥ 0, that entry is `Tangible(0)` exactly, and the map from
/// rows to those columns is a permutation. This is equivalent to
/// `dominance(A).uniformly_dominant` existing with an all-`𝟙` track.
pub fn in_sl1(a: &Matrix) -> bool {
    let n = a.n();
    let one = TropElem::one();
    let mut seen = vec![false; n];
    for i in 0..n {
        let mut track_col: Option<usize> = None;
        for j in 0..n {
            if a.get(i, j).nu_ge(&one) {
                if track_col.is_some() {
                    return false;
                }
                track_col = Some(j);
            }
        }
        match track_col {
            Some(j) if a.get(i, j) == one && !seen[j] => seen[j] = true,
            _ => return false,
        }
    }
    true
}

/// Which side the generalized permutation factor is pulled out on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    /// `A = P·A₁` with `A₁` definite.
    Left,
    /// `A = A₂·Q` with `A₂` definite.
    Right,
}

/// Split a nonsingular matrix into a generalized permutation matrix and a
/// definite part: `A = P·A₁` (`Left`) or `A = A₂·Q` (`Right`).
///
/// The permutation is the unique dominant one (unique because the permanent
/// is tangible) and the weights are its track entries, so the permanent of
/// `A` rides on the generalized permutation and the definite part has
/// permanent `𝟙`. In particular both factors stay in `SL_n` whenever `A` is.
pub fn factor_out(a: &Matrix, side: Side) -> Result<(GenPerm, Matrix)> {
    let p = per(a)?;
    if !p.is_tangible() {
        return Err(Error::singular(
            "factor-out requires a nonsingular matrix (tangible permanent)",
        ));
    }
    let dom = dominance(a)?;
    let pi = dom
        .strictly_dominant
        .expect("a tangible permanent forces a unique dominant permutation");
    let n = a.n();
    let weights: Vec<TropElem> = (0..n).map(|i| a.get(i, pi.apply(i))).collect();
    let winv: Vec<TropElem> =
        weights.iter().map(|w| w.inv()).collect::<Result<_>>()?;
    let gp = GenPerm::new(pi.clone(), weights)?;
    let (part, recomposed) = match side {
        Side::Left => {
            let inv = pi.inverse();
            let part = Matrix::from_fn(n, |k, j| {
                let i = inv.apply(k);
                winv[i] * a.get(i, j)
            });
            let recomposed = gp.to_matrix().try_mul(&part)?;
            (part, recomposed)
        }
        Side::Right => {
            let part =
                Matrix::from_fn(n, |i, k| a.get(i, pi.apply(k)) * winv[k]);
            let recomposed = part.try_mul(&gp.to_matrix())?;
            (part, recomposed)
        }
    };
    if recomposed != *a {
        return Err(Error::internal(format!(
            "factor-out recomposition mismatch for\n{a}"
        )));
    }
    Ok((gp, part))
}

/// Recognize the two-track nonfactorizable pattern: the support consists of
/// exactly two tangible permutation tracks `π`, `σ` with
/// `π(i) ≡ σ(i) + t (mod n)` for some shift `0 < t < n/2`.
///
/// For such `t` the orientation of each row is forced (`2t ≢ 0 (mod n)`
/// means at most one of the two entries can be the `π`-entry), so the check
/// is a linear scan per candidate shift.
pub fn nonfact_pattern(a: &Matrix) -> bool {
    let n = a.n();
    let mut row_cols: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut col_count = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            let e = a.get(i, j);
            if e.is_zero() {
                continue;
            }
            if !e.is_tangible() {
                return false;
            }
            row_cols[i].push(j);
            col_count[j] += 1;
        }
    }
    if row_cols.iter().any(|r| r.len() != 2) || col_count.iter().any(|&c| c != 2) {
        return false;
    }
    for t in 1..=(n.saturating_sub(1)) / 2 {
        let mut pi_seen = vec![false; n];
        let mut sigma_seen = vec![false; n];
        let mut ok = true;
        for cols in &row_cols {
            let (c1, c2) = (cols[0], cols[1]);
            let (p, s) = if (c1 + n - c2) % n == t {
                (c1, c2)
            } else if (c2 + n - c1) % n == t {
                (c2, c1)
            } else {
                ok = false;
                break;
            };
            if pi_seen[p] || sigma_seen[s] {
                ok = false;
                break;
            }
            pi_seen[p] = true;
            sigma_seen[s] = true;
        }
        if ok {
            return true;
        }
    }
    false
}

/// Shape of a verified singularizing product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WitnessMode {
    /// `M·U·M` is symmetrically singular (permutation `U`).
    Mum,
    /// `Uᵗ·M·U` is symmetrically singular (strictly normal `U`).
    UtMu,
}

/// For `M ∈ SL_n \ SL_n^𝟙`, produce a verified witness `U ∈ SL_n^𝟙` whose
/// sandwich product with `M` is symmetrically singular — evidence that no
/// nonsingular submonoid strictly contains `SL_n^𝟙` together with `M`.
///
/// Candidates are tried in order and each is verified before being returned:
///
/// 1. when all track entries are `𝟙`, permutations derived from a
///    row-strictness violation `(i, j)` (mode [`WitnessMode::Mum`]);
/// 2. single Gaussians `E_{x,y}(u)` with `u` taken from the bound
///    `a <ν u <ν 𝟙`, `d·u² >ν a` (midpoint of the derived interval) and a
///    fallback ladder `u = -1/2^k` (mode [`WitnessMode::UtMu`]);
/// 3. symmetric two-entry and all-entry fills `I + u·(off-diagonal)`, which
///    rescue generalized permutations with long cycles where no single
///    Gaussian works (mode [`WitnessMode::UtMu`]).
pub fn perij_witness(m: &Matrix) -> Result<(Matrix, WitnessMode)> {
    let n = m.n();
    let one = TropElem::one();
    if per(m)? != one {
        return Err(Error::witness(
            "singularizing witnesses require per(M) = 𝟙 (membership in SL_n)",
        ));
    }
    if in_sl1(m) {
        return Err(Error::witness(
            "matrix already lies in the unit-track monoid SL_n^𝟙; \
             its products with SL_n^𝟙 stay nonsingular",
        ));
    }
    let pi = dominance(m)?
        .strictly_dominant
        .expect("a tangible permanent forces a unique dominant permutation");

    let verify_mum = |u: &Matrix| -> Result<bool> {
        Ok(classify_singularity(&m.try_mul(u)?.try_mul(m)?)?
            == Singularity::SymmetricallySingular)
    };
    let verify_utmu = |u: &Matrix| -> Result<bool> {
        Ok(classify_singularity(&u.transpose().try_mul(m)?.try_mul(u)?)?
            == Singularity::SymmetricallySingular)
    };

    // Case 1: the track is all-𝟙, so exclusion from SL_n^𝟙 means some row
    // carries an off-track entry with ν ≥ 0. Transpositions through such a
    // position, composed with π⁻¹, route the big entry onto a tied track.
    let track_values: Vec<Rat> = (0..n)
        .map(|i| m.get(i, pi.apply(i)).value().expect("tangible track"))
        .collect();
    if track_values.iter().all(|v| *v == rat(0, 1)) {
        for i in 0..n {
            for j in 0..n {
                if j == pi.apply(i) || !m.get(i, j).nu_ge(&one) {
                    continue;
                }
                let tau = Perm::transposition(n, i, j)?;
                let pinv = pi.inverse();
                for cand in [pinv.compose(&tau), tau.compose(&pinv), pinv.clone()] {
                    let u = Matrix::permutation(&cand);
                    if verify_mum(&u)? {
                        return Ok((u, WitnessMode::Mum));
                    }
                }
            }
        }
    }

    // Case 2 and general fallback: strictly normal candidates UᵗMU.
    let lo = *track_values.iter().min().expect("n ≥ 1");
    let hi = *track_values.iter().max().expect("n ≥ 1");
    let mut u_values: Vec<Rat> = Vec::new();
    if lo < rat(0, 1) {
        // Midpoint of (max(lo, (lo - hi)/2), 0), satisfying both strict
        // bounds of the 2×2 congruence argument.
        let lower = std::cmp::max(lo, (lo - hi) / 2);
        u_values.push(midpoint(lower, rat(0, 1)));
    }
    for k in 1..=12u32 {
        u_values.push(rat(-1, 1 << k));
    }
    u_values.dedup();

    for &u in &u_values {
        let w = TropElem::Tangible(u);
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                let cand = Matrix::gaussian(n, x, y, w)?;
                if verify_utmu(&cand)? {
                    return Ok((cand, WitnessMode::UtMu));
                }
            }
        }
    }
    for &u in &u_values {
        let w = TropElem::Tangible(u);
        for x in 0..n {
            for y in (x + 1)..n {
                let mut cand = Matrix::identity(n);
                cand.set(x, y, w);
                cand.set(y, x, w);
                if verify_utmu(&cand)? {
                    return Ok((cand, WitnessMode::UtMu));
                }
            }
        }
        let filled =
            Matrix::from_fn(n, |i, j| if i == j { one } else { w });
        if verify_utmu(&filled)? {
            return Ok((filled, WitnessMode::UtMu));
        }
    }
    Err(Error::internal(format!(
        "no singularizing witness found for\n{m}\n(candidate ladder exhausted)"
    )))
}

/// Everything the library can say about one matrix, in one record.
#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    pub singularity: Singularity,
    pub definite: bool,
    pub normal: bool,
    pub strictly_normal: bool,
    pub in_sl: bool,
    pub in_bqsl: bool,
    pub in_qsl_circ: bool,
    pub in_sl1: bool,
    pub dominance: DominanceReport,
}

/// Run every classifier on `A` (enumeration-bounded sizes).
pub fn class_report(a: &Matrix) -> Result<ClassReport> {
    let shapes = shape_class(a)?;
    let (in_sl, in_bqsl, in_qsl_circ) = group_membership(a)?;
    Ok(ClassReport {
        singularity: classify_singularity(a)?,
        definite: shapes.definite,
        normal: shapes.normal,
        strictly_normal: shapes.strictly_normal,
        in_sl,
        in_bqsl,
        in_qsl_circ,
        in_sl1: in_sl1(a),
        dominance: dominance(a)?,
    })
}
