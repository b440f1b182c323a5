//! Checked integer helpers shared by the valency and action code.

use crate::valency::ValencyError;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> Result<u64, ValencyError> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b)).checked_mul(b).ok_or(ValencyError::Overflow)
}

/// Inverse of `nu` modulo `lambda`, returned in `1..lambda`.
///
/// The valency numerator θ of a multiple orbit is the inverse of the local
/// rotation number ν, so this is the map ν ↦ θ (and, being an involution on
/// units, also θ ↦ ν).
pub fn mod_inverse(nu: u64, lambda: u64) -> Result<u64, ValencyError> {
    if lambda < 2 || nu == 0 || nu >= lambda || gcd(nu, lambda) != 1 {
        return Err(ValencyError::InvalidRotation { nu, lambda });
    }
    let (mut r0, mut r1) = (lambda as i128, nu as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    Ok(t0.rem_euclid(lambda as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_inverse(nu: u64, lambda: u64) -> Option<u64> {
        (1..lambda).find(|t| (nu * t) % lambda == 1)
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(1, 10).unwrap(), 1);
        // (2g-1)·g ≡ 1 mod 2g+1 at g = 2
        assert_eq!(mod_inverse(3, 5).unwrap(), 2);
        assert_eq!(brute_inverse(5, 7), Some(3));
        assert_eq!(mod_inverse(5, 7).unwrap(), 3);
    }

    #[test]
    fn inverse_rejects_bad_input() {
        assert!(matches!(mod_inverse(2, 4), Err(ValencyError::InvalidRotation { .. })));
        assert!(mod_inverse(0, 5).is_err());
        assert!(mod_inverse(5, 5).is_err());
        assert!(mod_inverse(1, 1).is_err());
    }

    #[test]
    fn inverse_matches_scan_small() {
        for lambda in 2..200u64 {
            for nu in 1..lambda {
                assert_eq!(mod_inverse(nu, lambda).ok(), brute_inverse(nu, lambda));
            }
        }
    }

    proptest! {
        #[test]
        fn inverse_is_involution(lambda in 2u64..=10_000, seed in 1u64..10_000) {
            let nu = 1 + seed % (lambda - 1);
            prop_assume!(gcd(nu, lambda) == 1);
            let theta = mod_inverse(nu, lambda).unwrap();
            prop_assert_eq!(mod_inverse(theta, lambda).unwrap(), nu);
        }
    }
}
