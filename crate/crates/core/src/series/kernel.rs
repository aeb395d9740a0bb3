//! Substitution checks for the kernel roots and the functional equations of
//! the rectangular classes.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::catalog::{gf, GfName, Params};
use super::{frac, rat, Series, SeriesError};

/// Outcome of comparing two sides of an identity up to some order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub order: usize,
    /// First exponent where the sides differ, if any.
    pub first_failure: Option<usize>,
}

impl IdentityCheck {
    pub fn compare(name: &str, lhs: &Series, rhs: &Series) -> Self {
        IdentityCheck {
            name: name.to_string(),
            order: lhs.order().min(rhs.order()),
            first_failure: lhs.first_difference(rhs),
        }
    }

    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// `z0 = (1 - sqrt(1 - 4t)) / (2t)` to `terms` coefficients.
fn z0(terms: usize) -> Series {
    let n = terms + 1;
    let root = Series::binomial(&rat(-4), &frac(1, 2), n);
    (Series::one(n) - root).scale(&frac(1, 2)).unshift(1).expect("constant terms cancel")
}

/// Kernel-root identities.
///
/// (i) `1 - z + t z^2` vanishes at `z0`.
/// (ii) with `t = s^2`, `Z = (1 ± s) / (1 - t)` satisfies
///     `(1 - Z)^2 - t Z^2 = 0`, checked both as a polynomial identity after
///     clearing denominators and as a series identity.
/// (iii) `t z0 = d(t) + t`.
pub fn kernel_checks(terms: usize) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    let n = terms;
    let t = Series::t(n);
    let z = z0(n);
    let kernel = &(Series::one(n) - &z) + &(&t * &(&z * &z));
    out.push(IdentityCheck::compare("kernel root z0 of 1 - z + t z^2", &kernel, &Series::zero(n)));

    for (sign, label) in [(1, "+"), (-1, "-")] {
        // numerator and denominator of Z in the variable s
        let num = Series::from_ints(&[1, sign], n);
        let den = Series::from_ints(&[1, 0, -1], n);
        let s2 = Series::from_ints(&[0, 0, 1], n);
        let diff = &den - &num;
        // degree at most 4, so any order above 4 makes this exact
        let cleared = &(&diff * &diff) - &(&s2 * &(&num * &num));
        out.push(IdentityCheck::compare(
            &format!("Z{label}: (den - num)^2 - s^2 num^2 = 0"),
            &cleared.truncate(n.max(5)),
            &Series::zero(n.max(5)),
        ));
        let zs = num.div(&den).expect("unit denominator");
        let one_minus = Series::one(n) - &zs;
        let lhs = &(&one_minus * &one_minus) - &(&s2 * &(&zs * &zs));
        out.push(IdentityCheck::compare(&format!("Z{label}: (1 - Z)^2 - s^2 Z^2 = 0"), &lhs, &Series::zero(n)));
    }

    let d = gf(GfName::DCat, n, &Params::none()).expect("no parameters");
    out.push(IdentityCheck::compare("t z0 = d(t) + t", &(&t * &z), &(&d + &t)));
    out
}

fn rat_one() -> BigRational {
    BigRational::one()
}

/// Substitutes the rectangular-class solutions into their seven functional
/// equations at rational `x`, `y`, `z`.
pub fn functional_equation_checks(
    x: &BigRational,
    y: &BigRational,
    z: &BigRational,
    terms: usize,
) -> Result<Vec<IdentityCheck>, SeriesError> {
    if z.is_one() {
        return Err(SeriesError::DegenerateParam("z = 1 in a divided difference".into()));
    }
    if y.is_one() {
        return Err(SeriesError::DegenerateParam("y = 1 in a divided difference".into()));
    }
    let n = terms;
    let one = rat_one();
    let t = Series::t(n);
    let xy = |a: &BigRational, b: &BigRational, g| gf(g, n, &Params::xy(a.clone(), b.clone()));
    let xyz = |a: &BigRational, b: &BigRational, c: &BigRational, g| {
        gf(g, n, &Params::xyz(a.clone(), b.clone(), c.clone()))
    };
    let c0 = xy(x, y, GfName::C0p)?;
    let l0 = xy(x, y, GfName::L0p)?;
    let s0 = xy(x, y, GfName::S0p)?;
    let c0_1y = xy(&one, y, GfName::C0p)?;
    let c = xyz(x, y, z, GfName::Cp)?;
    let l = xyz(x, y, z, GfName::Lp)?;
    let s = xyz(x, y, z, GfName::Sp)?;
    let tx = t.scale(x);
    let ty = t.scale(y);
    let txy = t.scale(&(x * y));
    let inv_1mz = (&one - z).recip();
    let inv_1my = (&one - y).recip();

    let mut out = Vec::new();

    let rhs = &tx * &(&(&c0 + &l0) + &s0);
    out.push(IdentityCheck::compare("C0'", &c0, &rhs));

    let t2xy = (&t * &t).scale(&(x * y));
    let rhs = &(&(&t2xy + &(&txy * &c0_1y)) + &(&ty * &l0)) + &(&ty * &s0);
    out.push(IdentityCheck::compare("L0'", &l0, &rhs));

    let rhs = &(&txy * &c0_1y) + &(&ty * &s0);
    out.push(IdentityCheck::compare("S0'", &s0, &rhs));

    let rhs = &tx * &(&(&c + &l) + &s);
    out.push(IdentityCheck::compare("C'", &c, &rhs));

    let c_1yz = xyz(&one, y, z, GfName::Cp)?;
    let c_11z = xyz(&one, &one, z, GfName::Cp)?;
    let c_z1z = xyz(z, &one, z, GfName::Cp)?;
    let c0_11 = xy(&one, &one, GfName::C0p)?;
    let c0_z1 = xy(z, &one, GfName::C0p)?;
    let bracket_c = (&c_11z.scale(z) - &c_z1z).scale(&inv_1mz);
    let bracket_c0 = (&c0_11.scale(z) - &c0_z1).scale(&inv_1mz);
    let rhs = &(&(&txy * &(&(&c_1yz + &bracket_c) + &bracket_c0)) + &(&ty * &l)) + &(&ty * &s);
    out.push(IdentityCheck::compare("L'", &l, &rhs));

    let s0_x1 = xy(x, &one, GfName::S0p)?;
    let s_x1z = xyz(x, &one, z, GfName::Sp)?;
    let first = (&s0_x1.scale(y) - &s0).scale(&(z * &inv_1my));
    let second = (&s_x1z - &s).scale(&(y * z * &inv_1my));
    let rhs = &t * &(&first + &second);
    out.push(IdentityCheck::compare("S'", &s, &rhs));

    let at = |a: &BigRational, g| xyz(&one, &one, a, g);
    let n_z = gf(GfName::Np, n, &Params::z(z.clone()))?;
    let n_1 = gf(GfName::Np, n, &Params::z(one.clone()))?;
    let mut bracket = Series::zero(n);
    for g in [GfName::Cp, GfName::Lp, GfName::Sp] {
        bracket = &bracket + &(&at(&one, g)? - &at(z, g)?);
    }
    bracket = &bracket + &(&n_1 - &n_z.scale(z));
    let rhs = (&t * &bracket).scale(&(z * &inv_1mz));
    out.push(IdentityCheck::compare("N'", &n_z, &rhs));

    debug_assert!(out.iter().all(|c| c.order == n || n.is_zero()));
    Ok(out)
}
