//! Property-based tests over genuinely rational log values (the seeded
//! oracle suites draw integer values; these strategies exercise fractional
//! ones, including denominators that only meet at a common refinement).

use proptest::prelude::*;
use supertropical::semiring::rat;
use supertropical::{Matrix, TropElem};

fn scalar() -> impl Strategy<Value = TropElem> {
    prop_oneof![
        1 => Just(TropElem::Zero),
        4 => (-24i128..=24, 1i128..=4).prop_map(|(n, d)| TropElem::Tangible(rat(n, d))),
        2 => (-24i128..=24, 1i128..=4).prop_map(|(n, d)| TropElem::Ghost(rat(n, d))),
    ]
}

fn matrix(max_n: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(scalar(), n * n)
            .prop_map(move |v| Matrix::from_fn(n, |i, j| v[i * n + j]))
    })
}

proptest! {
    /// Semiring laws and the compatibility of the ghost-surpassing order
    /// with both operations, on rational-valued scalars.
    #[test]
    fn scalar_laws_and_surpass_monotonicity(
        a in scalar(),
        b in scalar(),
        c in scalar(),
    ) {
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a + TropElem::Zero, a);
        prop_assert_eq!(a * TropElem::one(), a);
        prop_assert_eq!(a * TropElem::Zero, TropElem::Zero);

        let bigger = a + b.nu();
        prop_assert!(bigger.ghost_surpass(&a));
        prop_assert!((bigger + c).ghost_surpass(&(a + c)));
        prop_assert!((bigger * c).ghost_surpass(&(a * c)));
    }

    /// Printing and parsing are mutually inverse on matrices with rational
    /// entries, so every displayed matrix in the docs can be fed back in.
    #[test]
    fn matrix_display_parse_round_trip(m in matrix(4)) {
        let text = m.to_string();
        prop_assert_eq!(Matrix::parse_text(&text).unwrap(), m);
    }
}
