//! The semigroups attached to one matrix `A`: the left union
//! `S_A^l = {B : I^l_A·B = B}`, the right union `S_A^r = {B : B·I^r_A = B}`,
//! their intersection `S_A` with two-sided unit `𝕀_A = I^l I^r I^l`,
//! conjugation `B ↦ A^∇·B·A`, and the fixed space
//! `V_A = {v : I^l_A·v = v}`.

use crate::classify::group_membership;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::nabla::{nabla, nabla_allow_ghost};
use crate::semiring::TropElem;

/// Membership of `B` in `(S_A^l, S_A^r, S_A)`.
///
/// `B` must lie in `BQSL_n` (checked; the semigroups live inside it) and
/// `per(A)` must be nonzero. A ghost permanent of `A` is admitted through
/// the ν-inverse extension of the quasi-inverse.
pub fn semigroup_membership(a: &Matrix, b: &Matrix) -> Result<(bool, bool, bool)> {
    let (_, b_in_bqsl, _) = group_membership(b)?;
    if !b_in_bqsl {
        return Err(Error::domain(
            "semigroup membership is defined for candidates in BQSL_n \
             (per(B) must ghost-surpass 𝟙)",
        ));
    }
    let nb = nabla_allow_ghost(a)?;
    let left = a.try_mul(&nb)?;
    let right = nb.try_mul(a)?;
    let core = left.try_mul(&right)?.try_mul(&left)?;
    let in_left = left.try_mul(b)? == *b;
    let in_right = b.try_mul(&right)? == *b;
    let in_both = core.try_mul(b)? == *b && b.try_mul(&core)? == *b;
    Ok((in_left, in_right, in_both))
}

/// Conjugation `B^A = A^∇·B·A`, for nonsingular `A`.
///
/// `conjugate(A, I) = I^r_A`. Conjugates of nonsingular matrices can be
/// singular; nothing better than this associativity-compatible action
/// exists in the supertropical setting.
pub fn conjugate(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let nb = nabla(a)?;
    nb.try_mul(b)?.try_mul(a)
}

/// Membership of `v` in the fixed space `V_A = {v : I^l_A·v = v}`.
pub fn v_space(a: &Matrix, v: &[TropElem]) -> Result<bool> {
    let nb = nabla(a)?;
    let left = a.try_mul(&nb)?;
    Ok(left.mat_vec(v)? == v)
}

/// The map `v ↦ A^∇·v`, which carries `V_A` into `V_{A^∇}` and, for
/// `v ∈ V_A`, intertwines conjugation: `(A^∇BA)·(A^∇v) = A^∇·(Bv)`.
pub fn nabla_map(a: &Matrix, v: &[TropElem]) -> Result<Vec<TropElem>> {
    nabla(a)?.mat_vec(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::determinant::{classify_singularity, per, Singularity};
    use crate::nabla::{is_nabla_regular, quasi_pack};
    use crate::semiring::{TropElem as E, Zero};

    fn t(v: i128) -> TropElem {
        E::t(v)
    }
    fn g(v: i128) -> TropElem {
        E::g(v)
    }
    fn mat(rows: &[&[TropElem]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn left_unit_absorbs_its_products() {
        let a = mat(&[&[t(-1), t(-1)], &[t(0), t(1)]]);
        let pack = quasi_pack(&a).unwrap();
        // I^l itself lies in S_A^l, and so does I^l·C for any C in BQSL.
        assert_eq!(semigroup_membership(&a, &pack.left).unwrap().0, true);
        let c = mat(&[&[t(0), t(2)], &[t(-2), t(0)]]);
        let lc = pack.left.try_mul(&c).unwrap();
        assert!(semigroup_membership(&a, &lc).unwrap().0);
    }

    #[test]
    fn nabla_regular_matrix_joins_its_own_semigroups() {
        // A quasi-identity is ∇-regular and sits in S_A^l ∩ S_A^r ∩ S_A.
        let a = mat(&[&[t(0), g(5)], &[Zero, t(0)]]);
        assert!(is_nabla_regular(&a).unwrap());
        assert_eq!(semigroup_membership(&a, &a).unwrap(), (true, true, true));
        // For reversible A, 𝕀_A·A·A^∇·A lies in S_A.
        let pack = quasi_pack(&a).unwrap();
        assert!(pack.reversible);
        let b = pack
            .core
            .try_mul(&a)
            .unwrap()
            .try_mul(&nabla(&a).unwrap())
            .unwrap()
            .try_mul(&a)
            .unwrap();
        let (_, _, in_both) = semigroup_membership(&a, &b).unwrap();
        assert!(in_both);
    }

    #[test]
    fn membership_preconditions() {
        let a = mat(&[&[t(-1), t(-1)], &[t(0), t(1)]]);
        // Candidate outside BQSL (tangible permanent above 𝟙).
        let outside = mat(&[&[t(1), Zero], &[Zero, t(0)]]);
        assert!(matches!(
            semigroup_membership(&a, &outside),
            Err(Error::Domain(_))
        ));
        // per(A) = 𝟘 is refused.
        let zero_per = mat(&[&[Zero, Zero], &[t(0), t(0)]]);
        assert!(matches!(
            semigroup_membership(&zero_per, &Matrix::identity(2)),
            Err(Error::Singular(_))
        ));
        // A ghost permanent of A is admitted.
        let ghostly = mat(&[&[t(0), t(0)], &[t(0), t(0)]]);
        assert!(semigroup_membership(&ghostly, &Matrix::identity(2)).is_ok());
    }

    #[test]
    fn conjugating_identity_gives_right_quasi_identity() {
        let a = mat(&[&[t(-1), t(-1)], &[t(0), t(1)]]);
        let pack = quasi_pack(&a).unwrap();
        assert_eq!(conjugate(&a, &Matrix::identity(2)).unwrap(), pack.right);
    }

    #[test]
    fn conjugate_of_quasi_identity_can_be_singular() {
        // Conjugating a quasi-identity by a definite matrix loses
        // nonsingularity.
        let b = mat(&[&[t(0), Zero], &[t(1), t(0)]]);
        let a = mat(&[&[t(0), g(5)], &[Zero, t(0)]]);
        assert!(crate::classify::is_definite(&b).unwrap());
        assert!(crate::nabla::is_quasi_identity(&a).unwrap());
        // B is definite, so B^∇ = B and conjugation by B is B·A·B.
        assert_eq!(nabla(&b).unwrap(), b);
        let conj = conjugate(&b, &a).unwrap();
        assert_eq!(conj, mat(&[&[g(6), g(5)], &[g(7), g(6)]]));
        assert!(classify_singularity(&conj).unwrap().is_singular());
    }

    #[test]
    fn conjugate_of_nonsingular_can_be_singular() {
        // The symbolic 2×2 family at x=2, y=−2, z=w=−5, α=β=−1.
        let a = mat(&[&[t(-1), t(0)], &[t(0), t(-1)]]);
        let b = mat(&[&[t(2), t(-5)], &[t(-5), t(-2)]]);
        assert_eq!(per(&a).unwrap(), t(0));
        assert!(per(&b).unwrap().is_tangible());
        let conj = conjugate(&a, &b).unwrap();
        assert_eq!(conj, mat(&[&[t(0), t(1)], &[t(1), t(2)]]));
        assert_eq!(per(&conj).unwrap(), g(2));
        assert_eq!(
            classify_singularity(&conj).unwrap(),
            Singularity::SymmetricallySingular
        );
    }

    #[test]
    fn conjugation_preconditions() {
        let ghostly = mat(&[&[t(0), t(0)], &[t(0), t(0)]]);
        assert!(matches!(
            conjugate(&ghostly, &Matrix::identity(2)),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn fixed_space_membership_and_projection() {
        let a = mat(&[&[t(-1), t(-1)], &[t(0), t(1)]]);
        let pack = quasi_pack(&a).unwrap();
        // Columns of I^l are fixed.
        for j in 0..2 {
            let col: Vec<TropElem> = (0..2).map(|i| pack.left.get(i, j)).collect();
            assert!(v_space(&a, &col).unwrap());
        }
        // Arbitrary vectors project into V_A through I^l.
        let w = vec![t(3), g(-2)];
        assert!(!v_space(&a, &w).unwrap());
        let projected = pack.left.mat_vec(&w).unwrap();
        assert!(v_space(&a, &projected).unwrap());
    }

    #[test]
    fn nabla_map_intertwines_conjugation() {
        let a = mat(&[&[t(-1), t(-1)], &[t(0), t(1)]]);
        let pack = quasi_pack(&a).unwrap();
        // B ∈ S_A^l and v ∈ V_A, both built by absorption.
        let b = pack
            .left
            .try_mul(&mat(&[&[t(0), t(4)], &[t(-3), t(1)]]))
            .unwrap();
        let v = pack.left.mat_vec(&[t(2), t(-1)]).unwrap();
        let conj = conjugate(&a, &b).unwrap();
        let lhs = conj.mat_vec(&nabla_map(&a, &v).unwrap()).unwrap();
        let rhs = nabla_map(&a, &b.mat_vec(&v).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        // The map lands in V_{A^∇}.
        let image = nabla_map(&a, &v).unwrap();
        assert!(v_space(&nabla(&a).unwrap(), &image).unwrap());
    }
}
