//! Adjoint, the quasi-inverse `A^∇`, quasi-identities, reversibility,
//! ∇-regularity, and the 2×2 paired-quasi-identity correspondence.
//!
//! For a nonsingular matrix the products `I^l = A·A^∇` and `I^r = A^∇·A` are
//! *quasi-identities*: nonsingular idempotents that behave like units for the
//! semigroups attached to `A`. They need not be equal, and the two triple
//! products `𝕀 = I^l I^r I^l` and `Ĩ = I^r I^l I^r` coincide exactly when
//! `A` is *reversible*.

use serde::Serialize;

use crate::determinant::{classify_singularity, per, per_assignment, Singularity};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::semiring::{Tangible, TropElem};

/// Adjoint matrix: entry `(i,j)` is the permanent of `A` with row `j` and
/// column `i` deleted (transposed minors). The adjoint of a 1×1 matrix is
/// `[[𝟙]]`.
pub fn adj(a: &Matrix) -> Result<Matrix> {
    let n = a.n();
    if n == 1 {
        return Ok(Matrix::identity(1));
    }
    // Small minors re-enumerate; larger ones take the assignment solver,
    // which computes the same permanent value and tangibility.
    let minor_per =
        |m: &Matrix| if n < 8 { per(m) } else { per_assignment(m) };
    let mut out = Matrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, minor_per(&a.minor(j, i))?);
        }
    }
    Ok(out)
}

/// How `nabla` treats a ghost permanent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GhostPolicy {
    Reject,
    Invert,
}

fn nabla_with(a: &Matrix, policy: GhostPolicy) -> Result<Matrix> {
    let p = crate::determinant::per_auto(a)?;
    match p {
        TropElem::Zero => Err(Error::singular(
            "nabla requires per(A) ≠ 𝟘 (the matrix has no complete assignment)",
        )),
        TropElem::Ghost(_) if policy == GhostPolicy::Reject => Err(Error::singular(
            "nabla requires a tangible permanent; pass the ghost opt-in to \
             use the ν-inverse extension on singular matrices",
        )),
        _ => Ok(adj(a)?.scalar_mul(p.inv()?)),
    }
}

/// The quasi-inverse `A^∇ = per(A)⁻¹·adj(A)`, for tangible `per(A)`.
///
/// When `A` is invertible (a generalized permutation matrix) this is the
/// classical inverse.
pub fn nabla(a: &Matrix) -> Result<Matrix> {
    nabla_with(a, GhostPolicy::Reject)
}

/// `A^∇` extended to ghost permanents by the ν-inverse (negate the value,
/// stay ghost). This leaves the classical theory; every output entry is
/// ghost. `per(A) = 𝟘` still fails.
pub fn nabla_allow_ghost(a: &Matrix) -> Result<Matrix> {
    nabla_with(a, GhostPolicy::Invert)
}

/// `A^∇∇`, the ∇-closure; satisfies `A^∇∇ ⊨ A`.
pub fn nabla2(a: &Matrix) -> Result<Matrix> {
    nabla(&nabla(a)?)
}

/// The four canonical products around `A` and the reversibility flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiPack {
    /// `I^l = A·A^∇`.
    pub left: Matrix,
    /// `I^r = A^∇·A`.
    pub right: Matrix,
    /// `𝕀 = I^l·I^r·I^l`.
    pub core: Matrix,
    /// `Ĩ = I^r·I^l·I^r`.
    pub core_tilde: Matrix,
    /// `core == core_tilde`.
    pub reversible: bool,
}

/// Compute `I^l`, `I^r`, the two triple products, and reversibility.
/// Requires a tangible nonzero permanent.
pub fn quasi_pack(a: &Matrix) -> Result<QuasiPack> {
    let nb = nabla(a)?;
    let left = a.try_mul(&nb)?;
    let right = nb.try_mul(a)?;
    let core = left.try_mul(&right)?.try_mul(&left)?;
    let core_tilde = right.try_mul(&left)?.try_mul(&right)?;
    let reversible = core == core_tilde;
    Ok(QuasiPack { left, right, core, core_tilde, reversible })
}

/// `E² = E` exactly.
pub fn is_idempotent(e: &Matrix) -> bool {
    e.try_mul(e).expect("square") == *e
}

/// A quasi-identity is a nonsingular idempotent matrix. (Such a matrix is
/// automatically definite with ghost off-diagonal entries.)
pub fn is_quasi_identity(e: &Matrix) -> Result<bool> {
    Ok(is_idempotent(e) && classify_singularity_of(e)? == Singularity::Nonsingular)
}

fn classify_singularity_of(e: &Matrix) -> Result<Singularity> {
    if e.n() <= crate::determinant::ENUMERATION_BOUND {
        classify_singularity(e)
    } else {
        // Beyond the enumeration bound only the permanent is available; it
        // distinguishes nonsingular from singular, which is all callers need.
        Ok(if per_assignment(e)?.is_tangible() {
            Singularity::Nonsingular
        } else {
            Singularity::Singular
        })
    }
}

/// `A = A·A^∇·A` exactly. Every quasi-identity is ∇-regular, and
/// `A·A^∇·A` itself is always ∇-regular.
pub fn is_nabla_regular(a: &Matrix) -> Result<bool> {
    let nb = nabla(a)?;
    Ok(a.try_mul(&nb)?.try_mul(a)? == *a)
}

/// Extract the off-diagonal pair `(u^ν, v^ν)` of a 2×2 quasi-identity.
fn quasi_2x2_offdiag(e: &Matrix, name: &str) -> Result<(TropElem, TropElem)> {
    if e.n() != 2 {
        return Err(Error::domain(format!("{name} must be 2×2, got n = {}", e.n())));
    }
    if !is_quasi_identity(e)? {
        return Err(Error::domain(format!("{name} is not a quasi-identity")));
    }
    if e.get(0, 0) != TropElem::one() || e.get(1, 1) != TropElem::one() {
        return Err(Error::domain(format!("{name} must have 𝟙 diagonal")));
    }
    let (u, v) = (e.get(0, 1), e.get(1, 0));
    if u.is_tangible() || v.is_tangible() {
        return Err(Error::domain(format!(
            "{name} must have ghost (or 𝟘) off-diagonal entries"
        )));
    }
    Ok((u, v))
}

/// Two 2×2 quasi-identities are *paired* when the products of their
/// off-diagonal ghosts agree: `u^ν·v^ν = u'^ν·v'^ν`.
pub fn is_paired(i1: &Matrix, i2: &Matrix) -> Result<bool> {
    let (u, v) = quasi_2x2_offdiag(i1, "first quasi-identity")?;
    let (u2, v2) = quasi_2x2_offdiag(i2, "second quasi-identity")?;
    Ok(u * v == u2 * v2)
}

/// Reconstruct, when possible, a matrix `A` with `per(A) = 𝟙`, `I^l_A = I`,
/// and `I^r_A = I'` from a paired pair of 2×2 quasi-identities.
///
/// The construction solves for square roots of the off-diagonal values, one
/// closed form per pattern of `𝟘`s. Pairs whose `𝟘` patterns cannot be
/// matched by any `A` (e.g. `I = I₂` against a non-identity partner, which
/// would force `A` invertible and hence `I' = I₂` too) return `None` even
/// though they satisfy the literal pairing equation.
pub fn paired_2x2(i1: &Matrix, i2: &Matrix) -> Result<Option<Matrix>> {
    let (u, v) = quasi_2x2_offdiag(i1, "first quasi-identity")?;
    let (u2, v2) = quasi_2x2_offdiag(i2, "second quasi-identity")?;
    if u * v != u2 * v2 {
        return Ok(None);
    }

    let half_diff = |x: TropElem, y: TropElem| Tangible((x.value().unwrap() - y.value().unwrap()) / 2);
    let half_sum = |x: TropElem, y: TropElem| Tangible((x.value().unwrap() + y.value().unwrap()) / 2);
    let zero = TropElem::Zero;

    let candidate = match (u.is_zero(), v.is_zero(), u2.is_zero(), v2.is_zero()) {
        // All off-diagonals present: A = [[a,b],[c,a⁻¹]].
        (false, false, false, false) => {
            let a = half_diff(u, u2);
            Matrix::from_rows(vec![
                vec![a, half_sum(u, u2)],
                vec![half_sum(v, v2), a.inv()?],
            ])?
        }
        // u = u' = 𝟘: the reconstruction is lower triangular.
        (true, false, true, false) => {
            let a = half_diff(v2, v);
            Matrix::from_rows(vec![vec![a, zero], vec![half_sum(v, v2), a.inv()?]])?
        }
        // v = v' = 𝟘: upper triangular.
        (false, true, false, true) => {
            let a = half_diff(u, u2);
            Matrix::from_rows(vec![vec![a, half_sum(u, u2)], vec![zero, a.inv()?]])?
        }
        // u = 𝟘, v' = 𝟘: anti-triangular with 𝟘 at (1,1).
        (true, false, false, true) => {
            let b = half_diff(u2, v);
            Matrix::from_rows(vec![vec![zero, b], vec![b.inv()?, half_sum(u2, v)]])?
        }
        // v = 𝟘, u' = 𝟘: anti-triangular with 𝟘 at (2,2).
        (false, true, true, false) => {
            let b = half_diff(u, v2);
            Matrix::from_rows(vec![vec![half_sum(u, v2), b], vec![b.inv()?, zero]])?
        }
        // Both quasi-identities are the true identity.
        (true, true, true, true) => Matrix::identity(2),
        // Mismatched 𝟘 patterns admit no realization.
        _ => return Ok(None),
    };

    // The construction is proven; verify anyway so a wrong branch can never
    // escape as a wrong answer.
    let pack = quasi_pack(&candidate)?;
    if per(&candidate)? == TropElem::one() && pack.left == *i1 && pack.right == *i2 {
        Ok(Some(candidate))
    } else {
        Err(Error::internal(format!(
            "paired 2×2 reconstruction failed verification for\n{i1}\nand\n{i2}"
        )))
    }
}
