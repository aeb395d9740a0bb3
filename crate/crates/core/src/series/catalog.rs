//! Closed-form generating functions, expanded exactly.
//!
//! Every formula is a sum of terms `num(t) / den(t) * (1 - 4t)^p` with
//! polynomial numerators and denominators. Square roots of `1 - 4t` enter
//! through the binomial series, which keeps each expansion linear in the
//! number of terms per polynomial coefficient.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{frac, rat, Series, SeriesError};

/// Names of the catalogued generating functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GfName {
    /// L-convex polyominoes.
    Lgf,
    /// Centered polyominoes.
    Egf,
    /// Z-convex polyominoes.
    Zgf,
    /// 4-stack polyominoes.
    S4gf,
    /// Convex polyominoes.
    Cgf,
    /// The series `d(t)` inside the Z-convex formula.
    DCat,
    /// Centered ascending polyominoes.
    Hgf,
    /// Rectangular ascending polyominoes.
    RectGf,
    /// Ascending polyominoes.
    Agf,
    C22gf,
    C21gf,
    C0p,
    L0p,
    S0p,
    Sp,
    Cp,
    Lp,
    Np,
    S111,
    R1,
    C1at1,
    C111,
    L111,
    N1,
}

impl GfName {
    pub const ALL: [GfName; 24] = [
        GfName::Lgf,
        GfName::Egf,
        GfName::Zgf,
        GfName::S4gf,
        GfName::Cgf,
        GfName::DCat,
        GfName::Hgf,
        GfName::RectGf,
        GfName::Agf,
        GfName::C22gf,
        GfName::C21gf,
        GfName::C0p,
        GfName::L0p,
        GfName::S0p,
        GfName::Sp,
        GfName::Cp,
        GfName::Lp,
        GfName::Np,
        GfName::S111,
        GfName::R1,
        GfName::C1at1,
        GfName::C111,
        GfName::L111,
        GfName::N1,
    ];

    /// Short name, as accepted on the command line.
    pub fn name(self) -> &'static str {
        match self {
            GfName::Lgf => "L",
            GfName::Egf => "E",
            GfName::Zgf => "Z",
            GfName::S4gf => "S4",
            GfName::Cgf => "C",
            GfName::DCat => "dCat",
            GfName::Hgf => "H",
            GfName::RectGf => "Rect",
            GfName::Agf => "A",
            GfName::C22gf => "C22",
            GfName::C21gf => "C21",
            GfName::C0p => "C0p",
            GfName::L0p => "L0p",
            GfName::S0p => "S0p",
            GfName::Sp => "Sp",
            GfName::Cp => "Cp",
            GfName::Lp => "Lp",
            GfName::Np => "Np",
            GfName::S111 => "S111",
            GfName::R1 => "R1",
            GfName::C1at1 => "C1at1",
            GfName::C111 => "C111",
            GfName::L111 => "L111",
            GfName::N1 => "N1",
        }
    }

    /// Alternative spelling with a `gf`/`Gf` suffix, where one exists.
    fn long_name(self) -> Option<&'static str> {
        Some(match self {
            GfName::Lgf => "Lgf",
            GfName::Egf => "Egf",
            GfName::Zgf => "Zgf",
            GfName::S4gf => "S4gf",
            GfName::Cgf => "Cgf",
            GfName::Hgf => "Hgf",
            GfName::RectGf => "RectGf",
            GfName::Agf => "Agf",
            GfName::C22gf => "C22gf",
            GfName::C21gf => "C21gf",
            _ => return None,
        })
    }

    /// Parameters the formula depends on.
    pub fn params(self) -> &'static [char] {
        match self {
            GfName::C0p | GfName::L0p | GfName::S0p => &['x', 'y'],
            GfName::Sp | GfName::Cp | GfName::Lp => &['x', 'y', 'z'],
            GfName::Np => &['z'],
            _ => &[],
        }
    }

    /// Univariate evaluations of the non-rectangular class series.
    pub fn is_scalar(self) -> bool {
        matches!(
            self,
            GfName::S111 | GfName::R1 | GfName::C1at1 | GfName::C111 | GfName::L111 | GfName::N1
        )
    }

    /// Whether the coefficients count objects, hence are non-negative integers.
    pub fn counts_objects(self) -> bool {
        self.params().is_empty()
    }
}

impl fmt::Display for GfName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GfName {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GfName::ALL
            .into_iter()
            .find(|g| g.name() == s || g.long_name() == Some(s))
            .ok_or_else(|| SeriesError::UnknownName(s.to_string()))
    }
}

/// Rational values for the catalogue variables `x`, `y`, `z`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params {
    pub x: Option<BigRational>,
    pub y: Option<BigRational>,
    pub z: Option<BigRational>,
}

impl Params {
    pub fn none() -> Self {
        Params::default()
    }

    pub fn xyz(x: BigRational, y: BigRational, z: BigRational) -> Self {
        Params { x: Some(x), y: Some(y), z: Some(z) }
    }

    pub fn xy(x: BigRational, y: BigRational) -> Self {
        Params { x: Some(x), y: Some(y), z: None }
    }

    pub fn z(z: BigRational) -> Self {
        Params { x: None, y: None, z: Some(z) }
    }

    fn take(&self, name: GfName, param: char) -> Result<BigRational, SeriesError> {
        let v = match param {
            'x' => &self.x,
            'y' => &self.y,
            _ => &self.z,
        };
        v.clone().ok_or(SeriesError::MissingParam { name: name.name().to_string(), param })
    }
}

/// Extra working order, so divisions that drop a few leading terms still
/// leave the requested number.
const PAD: usize = 4;

/// Builds polynomials and quotients at a fixed working order.
struct Ctx {
    n: usize,
}

type Poly = Vec<BigRational>;

fn ip(coeffs: &[i64]) -> Poly {
    coeffs.iter().map(|&c| rat(c)).collect()
}

impl Ctx {
    fn p(&self, coeffs: &Poly) -> Series {
        Series::from_coeffs(coeffs.clone(), self.n)
    }

    /// `(1 - 4t)^e`.
    fn root(&self, e: BigRational) -> Series {
        Series::binomial(&rat(-4), &e, self.n)
    }

    /// `num / prod(dens) * (1 - 4t)^e`; the power is skipped when `e` is `None`.
    fn term(&self, num: &[Poly], dens: &[Poly], e: Option<BigRational>) -> Result<Series, SeriesError> {
        let base = match e {
            Some(e) => self.root(e),
            None => Series::one(self.n),
        };
        self.term_on(base, num, dens)
    }

    /// `base * num / prod(dens)`, multiplying and dividing by one sparse
    /// polynomial at a time.
    fn term_on(&self, base: Series, num: &[Poly], dens: &[Poly]) -> Result<Series, SeriesError> {
        let mut acc = base;
        for f in num {
            acc = &acc * &self.p(f);
        }
        for d in dens {
            acc = acc.div(&self.p(d))?;
        }
        Ok(acc)
    }
}

fn mono(k: usize, c: BigRational) -> Poly {
    let mut v = vec![BigRational::zero(); k];
    v.push(c);
    v
}

/// `1 - t - 2ty + t^2 y^2`.
fn k_y(y: &BigRational) -> Poly {
    vec![rat(1), rat(-1) - rat(2) * y, y * y]
}

/// `1 - 3t + t^2 - 2tz + 4t^2 z + t^2 z^2 - t^3 z^2`.
fn k_z(z: &BigRational) -> Poly {
    let zz = z * z;
    vec![rat(1), rat(-3) - rat(2) * z, rat(1) + rat(4) * z + &zz, -zz]
}

fn half() -> BigRational {
    frac(1, 2)
}

/// Expansion of `name` to `terms` coefficients at the given parameters.
pub fn gf(name: GfName, terms: usize, params: &Params) -> Result<Series, SeriesError> {
    let c = Ctx { n: terms + PAD };
    let one = BigRational::one;
    let s = match name {
        GfName::Lgf => c.term(&[ip(&[0, 0, 1, -2, 1])], &[ip(&[1, -4, 2])], None)?,
        GfName::Egf => c.term(&[ip(&[0, 0, 1, -1]), ip(&[1, -3])], &[ip(&[1, -2]), ip(&[1, -4])], None)?,
        GfName::DCat => d_cat(&c),
        GfName::Zgf => {
            let left = c.term_on(
                d_cat(&c),
                &[ip(&[0, 0, 0, 0, 2]), ip(&[1, -4, 4])],
                &[ip(&[1, -8, 16]), ip(&[1, -3]), ip(&[1, -1])],
            )?;
            let right = c.term(&[ip(&[0, 0, 1, -6, 10, -2, -1])], &[ip(&[1, -4]), ip(&[1, -3]), ip(&[1, -1])], None)?;
            left + right
        }
        GfName::S4gf => c.term(&[ip(&[0, 0, 1, -6, 9])], &[ip(&[1, -2])], Some(frac(-3, 2)))?,
        GfName::Cgf => {
            let rational = c.term(&[ip(&[0, 0, 1, -6, 11, -4])], &[ip(&[1, -8, 16])], None)?;
            rational - c.term(&[ip(&[0, 0, 0, 0, 4])], &[], Some(frac(-3, 2)))?
        }
        GfName::Hgf => {
            let tt = ip(&[0, 1, -1]);
            let alg = c.term(&[tt.clone()], &[], Some(frac(-1, 2)))?;
            (alg - c.p(&tt)).scale(&half())
        }
        GfName::RectGf => c.term(&[ip(&[0, 0, 1])], &[], Some(frac(-1, 2)))?,
        GfName::Agf => {
            let rational = c.term(&[ip(&[0, 0, 2, -12, 19, -4])], &[ip(&[2]), ip(&[1, -8, 16])], None)?;
            rational - c.term(&[ip(&[0, 0, 0, 0, 5, -8])], &[ip(&[2, -4])], Some(frac(-3, 2)))?
        }
        GfName::C22gf => {
            let alg = c.term(&[ip(&[0, 0, 0, 0, 1])], &[ip(&[1, -2])], Some(frac(-3, 2)))?;
            alg - c.term(&[ip(&[0, 0, 0, 0, 1])], &[ip(&[1, -4]), ip(&[1, -4, 2])], None)?
        }
        GfName::C21gf => {
            let alg = c.term(
                &[ip(&[0, 0, 0, 0, -2, 10, -15, 8])],
                &[ip(&[2]), ip(&[1, -1]), ip(&[1, -3]), ip(&[1, -2])],
                Some(frac(-3, 2)),
            )?;
            let rational = c.term(
                &[ip(&[0, 0, 0, 0, -2, 14, -25, 4, -6, 8])],
                &[ip(&[2]), ip(&[1, -4, 2]), ip(&[1, -8, 16]), ip(&[1, -3]), ip(&[1, -1])],
                None,
            )?;
            alg - rational
        }
        GfName::C0p => {
            let (x, y) = (params.take(name, 'x')?, params.take(name, 'y')?);
            c.term(
                &[mono(3, &x * &x * &y), ip(&[1, -1]), vec![one(), -&y]],
                &[vec![one(), -x], k_y(&y)],
                None,
            )?
        }
        GfName::L0p => {
            let (x, y) = (params.take(name, 'x')?, params.take(name, 'y')?);
            c.term(&[mono(2, &x * &y), vec![one(), rat(-1) - &y]], &[k_y(&y)], None)?
        }
        GfName::S0p => {
            let (x, y) = (params.take(name, 'x')?, params.take(name, 'y')?);
            c.term(&[mono(4, &x * &y * &y)], &[k_y(&y)], None)?
        }
        GfName::Sp => {
            let (x, y, z) = (params.take(name, 'x')?, params.take(name, 'y')?, params.take(name, 'z')?);
            let inner = vec![one(), rat(-1) - &z, &z - &y];
            c.term(&[mono(5, &x * &y * &z), inner], &[k_y(&y), k_z(&z)], None)?
        }
        GfName::Cp => {
            let (x, y, z) = (params.take(name, 'x')?, params.take(name, 'y')?, params.take(name, 'z')?);
            let inner = vec![one(), -&y - &z, &y - &z + &y * &z];
            c.term(
                &[mono(5, &x * &x * &y * &z), ip(&[1, -1]), inner],
                &[vec![one(), -x], k_y(&y), k_z(&z)],
                None,
            )?
        }
        GfName::Lp => {
            let (x, y, z) = (params.take(name, 'x')?, params.take(name, 'y')?, params.take(name, 'z')?);
            let yz = &y * &z;
            let inner = vec![one(), rat(-2) - &y - &z, rat(1) + rat(2) * &y + &z + &yz, -yz];
            c.term(&[mono(4, &x * &y * &z), inner], &[k_y(&y), k_z(&z)], None)?
        }
        GfName::Np => {
            let z = params.take(name, 'z')?;
            let kernel = vec![one() - &z, &z * &z];
            let alg = c.term(&[mono(3, z.clone())], &[kernel.clone()], Some(frac(-1, 2)))?;
            let rational = c.term(
                &[mono(3, z.clone()), vec![one(), -z.clone()], vec![one(), rat(-1) - &z]],
                &[kernel, k_z(&z)],
                None,
            )?;
            alg - rational
        }
        GfName::S111 | GfName::R1 | GfName::C1at1 | GfName::C111 | GfName::L111 | GfName::N1 => {
            scalar(&c, name)?
        }
    };
    Ok(s.truncate(terms))
}

/// `d(t) = (1 - 2t - sqrt(1 - 4t)) / 2`.
fn d_cat(c: &Ctx) -> Series {
    (c.p(&ip(&[1, -2])) - c.root(half())).scale(&half())
}

/// `1 - 5t + 6t^2 - t^3`.
fn cubic() -> Poly {
    ip(&[1, -5, 6, -1])
}

fn scalar(c: &Ctx, name: GfName) -> Result<Series, SeriesError> {
    let inv = || Some(frac(-1, 2));
    let two_1m2t = ip(&[2, -4]);
    let s = match name {
        GfName::S111 => {
            let alg = c.term(&[ip(&[0, 1]), cubic()], &[two_1m2t.clone()], inv())?;
            let rational = c.term(&[ip(&[0, 1, -8, 23, -28, 14, -4, 1])], &[two_1m2t, cubic()], None)?;
            alg - rational
        }
        GfName::R1 => {
            let num = ip(&[0, 0, 0, 1, -1]);
            c.term(&[num.clone()], &[two_1m2t.clone()], inv())? - c.term(&[num], &[two_1m2t], None)?
        }
        GfName::C1at1 => {
            let num = ip(&[0, 0, 0, 0, 1]);
            c.term(&[num.clone()], &[two_1m2t.clone()], inv())? - c.term(&[num], &[two_1m2t], None)?
        }
        GfName::C111 => {
            let alg = c.term(&[ip(&[0, 0, 1, -3, 1])], &[two_1m2t.clone()], inv())?;
            let rational = c.term(&[ip(&[0, 0, 1, -6, 12, -8, 1, -1])], &[two_1m2t, cubic()], None)?;
            alg - rational
        }
        GfName::L111 => {
            let alg = c.term(&[ip(&[0, 0, 1])], &[ip(&[2])], inv())?;
            alg - c.term(&[ip(&[0, 0, 1, -3, 2, -1])], &[ip(&[2]), cubic()], None)?
        }
        GfName::N1 => {
            let rational = c.term(
                &[ip(&[0, 1, -10, 31, -16, -68, 90, -27, 4])],
                &[ip(&[2]), ip(&[1, -8, 16]), cubic()],
                None,
            )?;
            rational - c.term(&[ip(&[0, 1, -5, 2, 13, -8])], &[two_1m2t], Some(frac(-3, 2)))?
        }
        other => return Err(SeriesError::NotScalar(other.name().to_string())),
    };
    Ok(s)
}

/// Expansion of one of the six printed scalar evaluations.
pub fn scalar_gf(name: GfName, terms: usize) -> Result<Series, SeriesError> {
    if !name.is_scalar() {
        return Err(SeriesError::NotScalar(name.name().to_string()));
    }
    gf(name, terms, &Params::none())
}
