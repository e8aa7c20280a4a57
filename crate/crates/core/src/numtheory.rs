//! Exact integer arithmetic on `u64`: factorization, divisor count, totient,
//! Moebius function, and the gcd-sum function gamma(d) = sum_{n=1}^{d} gcd(n, d)
//! together with its divisor-sum identities. No floating point anywhere.

use crate::error::Error;

/// Inputs above 2^31 are rejected; every intermediate then fits in u64/i64.
pub const MAX_INPUT: u64 = 1 << 31;

fn check(d: u64) -> Result<(), Error> {
    if d == 0 {
        return Err(Error::NonPositiveInput);
    }
    if d > MAX_INPUT {
        return Err(Error::InputTooLarge(d));
    }
    Ok(())
}

/// Prime factorization as ascending `(prime, exponent)` pairs; 1 has none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    d: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }
}

pub fn factorize(d: u64) -> Result<Factorization, Error> {
    check(d)?;
    let mut rest = d;
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut a = 0u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                a += 1;
            }
            factors.push((p, a));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { d, factors })
}

/// Number of divisors tau(d) = prod (alpha_i + 1).
pub fn tau(d: u64) -> Result<u64, Error> {
    let f = factorize(d)?;
    Ok(f.factors.iter().map(|&(_, a)| u64::from(a) + 1).product())
}

/// Euler totient phi(d), computed exactly as d * prod (p - 1) / p.
pub fn phi(d: u64) -> Result<u64, Error> {
    let f = factorize(d)?;
    let mut out = d;
    for &(p, _) in &f.factors {
        out = out / p * (p - 1);
    }
    Ok(out)
}

/// Moebius function: 0 on non-squarefree d, otherwise (-1)^{#prime factors}.
pub fn mobius(d: u64) -> Result<i64, Error> {
    let f = factorize(d)?;
    if f.factors.iter().any(|&(_, a)| a > 1) {
        return Ok(0);
    }
    Ok(if f.factors.len() % 2 == 0 { 1 } else { -1 })
}

/// gcd with the convention gcd(0, d) = d.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// The gcd-sum function via the multiplicative closed form
/// gamma(d) = d * prod_i (1 + alpha_i (1 - 1/p_i)),
/// evaluated exactly as d * prod_i (p_i + alpha_i (p_i - 1)) / p_i.
pub fn gcd_sum(d: u64) -> Result<u64, Error> {
    let f = factorize(d)?;
    let mut out = d;
    // Division is exact at each step: p_i^{alpha_i} divides d, and every
    // factor applied before it only multiplies by integers.
    for &(p, a) in &f.factors {
        out = out / p * (p + u64::from(a) * (p - 1));
    }
    Ok(out)
}

/// Literal evaluation of sum_{n=1}^{d} gcd(n, d); the oracle for `gcd_sum`.
pub fn gcd_sum_direct(d: u64) -> Result<u64, Error> {
    check(d)?;
    Ok((1..=d).map(|n| gcd(n, d)).sum())
}

/// gamma(d) = sum_{j | d} j * tau(j) * mu(d / j).
pub fn gamma_mobius(d: u64) -> Result<u64, Error> {
    let mut acc: i64 = 0;
    for j in divisors(d)? {
        let term = (j * tau(j)?) as i64 * mobius(d / j)?;
        acc += term;
    }
    debug_assert!(acc > 0);
    Ok(acc as u64)
}

/// sum_{j | d} gamma(j); equals d * tau(d).
pub fn summatory_gamma(d: u64) -> Result<u64, Error> {
    let mut acc = 0u64;
    for j in divisors(d)? {
        acc += gcd_sum(j)?;
    }
    Ok(acc)
}

/// All divisors of d in ascending order.
pub fn divisors(d: u64) -> Result<Vec<u64>, Error> {
    let f = factorize(d)?;
    let mut out = vec![1u64];
    for &(p, a) in f.factors() {
        let prev = out.clone();
        let mut pk = 1u64;
        for _ in 0..a {
            pk *= p;
            out.extend(prev.iter().map(|&x| x * pk));
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(1).unwrap().factors(), &[]);
        assert_eq!(factorize(6).unwrap().factors(), &[(2, 1), (3, 1)]);
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(97).unwrap().factors(), &[(97, 1)]);
        assert_eq!(factorize(1024).unwrap().factors(), &[(2, 10)]);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(factorize(0), Err(Error::NonPositiveInput)));
        assert!(matches!(tau(0), Err(Error::NonPositiveInput)));
        assert!(matches!(
            factorize((1 << 31) + 1),
            Err(Error::InputTooLarge(_))
        ));
        assert!(factorize(1 << 31).is_ok());
    }

    #[test]
    fn tau_phi_values() {
        assert_eq!(tau(1).unwrap(), 1);
        assert_eq!(tau(6).unwrap(), 4);
        assert_eq!(tau(36).unwrap(), 9);
        assert_eq!(phi(1).unwrap(), 1);
        assert_eq!(phi(9).unwrap(), 6);
        assert_eq!(phi(10).unwrap(), 4);
    }

    #[test]
    fn tau_phi_against_brute_force() {
        for d in 1..=600u64 {
            let t = (1..=d).filter(|j| d % j == 0).count() as u64;
            let p = (1..=d).filter(|&n| gcd(n, d) == 1).count() as u64;
            assert_eq!(tau(d).unwrap(), t, "tau({d})");
            assert_eq!(phi(d).unwrap(), p, "phi({d})");
        }
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(2).unwrap(), -1);
        assert_eq!(mobius(4).unwrap(), 0);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(30).unwrap(), -1);
    }

    #[test]
    fn mobius_sum_over_divisors_is_indicator() {
        // sum_{j | d} mu(j) = [d == 1]
        for d in 1..=400u64 {
            let s: i64 = divisors(d)
                .unwrap()
                .into_iter()
                .map(|j| mobius(j).unwrap())
                .sum();
            assert_eq!(s, i64::from(d == 1), "d = {d}");
        }
    }

    #[test]
    fn gcd_convention() {
        assert_eq!(gcd(0, 7), 7);
        assert_eq!(gcd(7, 0), 7);
        assert_eq!(gcd(12, 18), 6);
    }

    #[test]
    fn gcd_sum_known_values() {
        assert_eq!(gcd_sum(1).unwrap(), 1);
        assert_eq!(gcd_sum(2).unwrap(), 3);
        assert_eq!(gcd_sum(4).unwrap(), 8);
        assert_eq!(gcd_sum(6).unwrap(), 15);
        assert_eq!(gcd_sum(7).unwrap(), 13);
        assert_eq!(gcd_sum(9).unwrap(), 21);
        assert_eq!(gcd_sum(12).unwrap(), 40);
        assert_eq!(gcd_sum(35).unwrap(), 117);
    }

    #[test]
    fn gcd_sum_matches_direct_sum() {
        for d in 1..=2000u64 {
            assert_eq!(gcd_sum(d).unwrap(), gcd_sum_direct(d).unwrap(), "d = {d}");
        }
    }

    #[test]
    fn gcd_sum_is_multiplicative_on_coprime_parts() {
        let pairs = [(3, 4), (5, 8), (7, 9), (16, 27), (11, 25)];
        for (a, b) in pairs {
            assert_eq!(
                gcd_sum(a * b).unwrap(),
                gcd_sum(a).unwrap() * gcd_sum(b).unwrap()
            );
        }
    }

    #[test]
    fn gamma_mobius_matches_gcd_sum() {
        assert_eq!(gamma_mobius(6).unwrap(), 15);
        for d in 1..=2000u64 {
            assert_eq!(gamma_mobius(d).unwrap(), gcd_sum(d).unwrap(), "d = {d}");
        }
    }

    #[test]
    fn summatory_gamma_is_d_tau_d() {
        assert_eq!(summatory_gamma(6).unwrap(), 24);
        assert_eq!(summatory_gamma(8).unwrap(), 32);
        for d in 1..=2000u64 {
            assert_eq!(
                summatory_gamma(d).unwrap(),
                d * tau(d).unwrap(),
                "d = {d}"
            );
        }
    }

    #[test]
    fn divisors_sorted_and_complete() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49).unwrap(), vec![1, 7, 49]);
        for d in 1..=300u64 {
            let brute: Vec<u64> = (1..=d).filter(|j| d % j == 0).collect();
            assert_eq!(divisors(d).unwrap(), brute);
        }
    }
}
