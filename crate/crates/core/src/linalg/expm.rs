use num_complex::Complex64 as C64;

use super::{eig_hermitian, CMatrix};
use crate::error::Result;

/// `exp(i * scale * h)` for Hermitian `h`, via eigen-decomposition.
///
/// Propagators `exp(-i H dt)` are obtained with `scale = -dt`.
pub fn expm_hermitian(h: &CMatrix, scale: f64) -> Result<CMatrix> {
    let eig = eig_hermitian(h)?;
    Ok(eig.reconstruct_with(|l| C64::from_polar(1.0, scale * l)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli;
    use crate::linalg::testing::{random_hermitian, taylor_expm};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn zero_exponent_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let h = random_hermitian(&mut rng, 3);
        let u = expm_hermitian(&h, 0.0).unwrap();
        assert!(u.max_abs_diff(&CMatrix::identity(3)) < 1e-14);
    }

    #[test]
    fn pauli_rotation() {
        let u = expm_hermitian(&pauli::x(), -PI / 2.0).unwrap();
        let expected = pauli::x().scale(C64::new(0.0, -1.0));
        assert!(u.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn matches_taylor_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let h = random_hermitian(&mut rng, 3);
            let ours = expm_hermitian(&h, 0.7).unwrap();
            let oracle = taylor_expm(&h.scale(C64::new(0.0, 0.7)));
            assert!(ours.max_abs_diff(&oracle) <= 1e-10);
            assert!(ours.is_unitary(1e-10));
        }
    }

    proptest! {
        #[test]
        fn semigroup(seed in 0u64..10_000, s1 in -3.0f64..3.0, s2 in -3.0f64..3.0, n in 2usize..7) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let h = random_hermitian(&mut rng, n);
            let a = expm_hermitian(&h, s1).unwrap();
            let b = expm_hermitian(&h, s2).unwrap();
            let ab = expm_hermitian(&h, s1 + s2).unwrap();
            prop_assert!((&a * &b).max_abs_diff(&ab) <= 1e-10);
        }

        #[test]
        fn spectrum_invariant_under_conjugation(seed in 0u64..10_000, n in 2usize..7) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let h = random_hermitian(&mut rng, n);
            let g = random_hermitian(&mut rng, n);
            let u = expm_hermitian(&g, 1.3).unwrap();
            let conj = &(&u * &h) * &u.adjoint();
            let e1 = eig_hermitian(&h).unwrap();
            let e2 = eig_hermitian(&conj.hermitian_part()).unwrap();
            for (a, b) in e1.values.iter().zip(&e2.values) {
                prop_assert!((a - b).abs() <= 1e-10);
            }
        }
    }
}
