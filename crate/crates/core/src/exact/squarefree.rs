use rug::Integer;

use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Squarefree decomposition by Yun's algorithm.
///
/// Returns monic, pairwise coprime, squarefree factors with their
/// multiplicities, so that `p = lead(p) · Π factor^multiplicity`.
/// Constants decompose into the empty list.
pub fn poly_squarefree(p: &Poly) -> Result<Vec<(Poly, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let f = p.monic();
    let df = f.derivative();
    let a0 = Poly::gcd(&f, &df);
    let mut b = f.exact_div(&a0)?;
    let c = df.exact_div(&a0)?;
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1u32;
    while !b.is_constant() {
        let a = Poly::gcd(&b, &d);
        b = b.exact_div(&a)?;
        let c = d.exact_div(&a)?;
        d = &c - &b.derivative();
        if !a.is_constant() {
            out.push((a, i));
        }
        i += 1;
    }
    Ok(out)
}

/// Monic squarefree part of `p` (product of its distinct monic factors).
pub fn squarefree_part(p: &Poly) -> Result<Poly> {
    Ok(poly_squarefree(p)?
        .into_iter()
        .fold(Poly::one(), |acc, (f, _)| &acc * &f))
}

/// Root multiplicities of `p`, largest first, with an extra entry of
/// `target_degree − deg p` for the point at infinity when positive.
///
/// This is the fiber profile of a degree `target_degree` map whose fiber
/// equation has `p` as its affine part.
pub fn multiplicity_profile(p: &Poly, target_degree: usize) -> Result<Vec<u32>> {
    let deg = p.degree().ok_or(Error::ZeroInput)?;
    if target_degree < deg {
        return Err(Error::InvalidParameter(format!(
            "target degree {target_degree} below polynomial degree {deg}"
        )));
    }
    let mut profile = Vec::new();
    for (f, m) in poly_squarefree(p)? {
        profile.extend(std::iter::repeat_n(m, f.deg()));
    }
    if target_degree > deg {
        profile.push((target_degree - deg) as u32);
    }
    profile.sort_unstable_by(|a, b| b.cmp(a));
    Ok(profile)
}

const TRIAL_DIVISION_LIMIT: u64 = 1 << 40;

fn positive_divisors(n: &Integer) -> Result<Vec<u64>> {
    let n = n
        .to_u64()
        .filter(|&v| v > 0 && v <= TRIAL_DIVISION_LIMIT)
        .ok_or_else(|| Error::InvalidParameter(format!("coefficient {n} too large to factor")))?;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    let mut divs = vec![1u64];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = 1u64;
            for _ in 0..=e {
                next.push(d * pk);
                pk *= p;
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Distinct rational roots of `p` by the rational root theorem.
///
/// Intended for the small auxiliary polynomials that arise when splitting
/// singular points by their local data; refuses coefficients whose
/// factorisation would need more than trial division.
pub fn rational_roots(p: &Poly) -> Result<Vec<Rational>> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut ints = p.primitive_integer();
    let mut roots = Vec::new();
    let lead_zeros = ints.iter().take_while(|c| c.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(Rational::new());
        ints.drain(..lead_zeros);
    }
    if ints.len() <= 1 {
        return Ok(roots);
    }
    let reduced = Poly::new(ints.iter().map(|c| Rational::from(c.clone())).collect());
    let a0 = Integer::from(ints[0].abs_ref());
    let an = Integer::from(ints[ints.len() - 1].abs_ref());
    let nums = positive_divisors(&a0)?;
    let dens = positive_divisors(&an)?;
    for &n in &nums {
        for &d in &dens {
            if Integer::from(n).gcd(&Integer::from(d)) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let r = Rational::from((Integer::from(n) * sign, Integer::from(d)));
                if reduced.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn pure_power() {
        let p = Poly::from_i64s(&[0, 0, 1]);
        assert_eq!(poly_squarefree(&p).unwrap(), vec![(Poly::x(), 2)]);
    }

    #[test]
    fn mixed_multiplicities() {
        // (x - 1)(x - 4)^2
        let p = Poly::from_i64s(&[-16, 24, -9, 1]);
        let sf = poly_squarefree(&p).unwrap();
        assert_eq!(
            sf,
            vec![
                (Poly::from_i64s(&[-1, 1]), 1),
                (Poly::from_i64s(&[-4, 1]), 2)
            ]
        );
    }

    #[test]
    fn covering_numerator_up_to_constant() {
        // 3x^2 - 2x^3 = x^2 (3 - 2x); factors are monic so 3 - 2x appears as x - 3/2
        let p = Poly::from_i64s(&[0, 0, 3, -2]);
        let sf = poly_squarefree(&p).unwrap();
        assert_eq!(
            sf,
            vec![(Poly::linear(q(-3, 2), q(1, 1)), 1), (Poly::x(), 2)]
        );
    }

    #[test]
    fn zero_input_rejected() {
        assert_eq!(poly_squarefree(&Poly::zero()), Err(Error::ZeroInput));
        assert_eq!(
            multiplicity_profile(&Poly::zero(), 3),
            Err(Error::ZeroInput)
        );
    }

    #[test]
    fn profiles() {
        assert_eq!(
            multiplicity_profile(&Poly::from_i64s(&[0, 0, 3, -2]), 3).unwrap(),
            vec![2, 1]
        );
        // (4 - 3x)^2 in degree 3: one point at infinity
        assert_eq!(
            multiplicity_profile(&Poly::from_i64s(&[16, -24, 9]), 3).unwrap(),
            vec![2, 1]
        );
        assert_eq!(
            multiplicity_profile(&Poly::from_i64s(&[0, 0, 0, 1]), 3).unwrap(),
            vec![3]
        );
        assert!(multiplicity_profile(&Poly::from_i64s(&[0, 0, 0, 1]), 2).is_err());
    }

    #[test]
    fn rational_roots_found() {
        // (2x - 1)(x + 3) x
        let p = &(&Poly::from_i64s(&[-1, 2]) * &Poly::from_i64s(&[3, 1])) * &Poly::x();
        assert_eq!(
            rational_roots(&p).unwrap(),
            vec![q(-3, 1), q(0, 1), q(1, 2)]
        );
        assert!(rational_roots(&Poly::from_i64s(&[-2, 0, 1]))
            .unwrap()
            .is_empty());
    }
}
