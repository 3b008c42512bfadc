//! Named groups: the spherical space-form families and a small test stock.
//!
//! Families with a normal form (`Q`, `D`) are built directly from it and can
//! also be realized from their presentation; `P48`, `P120` and `Pprime` exist
//! only through coset enumeration.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{parse_cycles, FiniteGroup, DEFAULT_ORDER_LIMIT};
use crate::presentation::parse_presentation;
use crate::todd_coxeter::{todd_coxeter, PresentedGroup, DEFAULT_MAX_COSETS};

/// Generalized quaternion group of order `4n`, elements `x^i y^a` with id
/// `i * 2n + a`.
pub fn make_quaternion(n: usize) -> Result<FiniteGroup> {
    make_quaternion_with_limit(n, DEFAULT_ORDER_LIMIT)
}

pub fn make_quaternion_with_limit(n: usize, limit: usize) -> Result<FiniteGroup> {
    if n < 2 {
        return Err(Error::Invalid(format!("Q_4n needs n >= 2, got {n}")));
    }
    let order = 4 * n;
    if order > limit {
        return Err(Error::OrderLimitExceeded { order, limit });
    }
    let m = 2 * n;
    // y^a x = x y^-a and x^2 = y^n
    let g = FiniteGroup::from_fn(order, None, |p, q| {
        let (i, a) = (p / m, p % m);
        let (j, b) = (q / m, q % m);
        let a = if j == 1 { (m - a) % m } else { a };
        let mut y = a + b;
        let mut x = i + j;
        if x == 2 {
            x = 0;
            y += n;
        }
        x * m + y % m
    })?;
    let names = (0..order).map(|id| normal_form_name(id / m, id % m)).collect();
    Ok(g.with_names(names))
}

/// `D_{2^m(2n+1)}`: `x^{2^m} = y^{2n+1} = 1`, `x y x^-1 = y^-1`, elements
/// `x^i y^a` with id `i * (2n+1) + a`.
pub fn make_dihedral_type(m: u32, n: usize) -> Result<FiniteGroup> {
    make_dihedral_type_with_limit(m, n, DEFAULT_ORDER_LIMIT)
}

pub fn make_dihedral_type_with_limit(m: u32, n: usize, limit: usize) -> Result<FiniteGroup> {
    if m < 2 || n < 1 {
        return Err(Error::Invalid(format!("D_(2^m(2n+1)) needs m >= 2, n >= 1, got ({m}, {n})")));
    }
    let xs =
        1usize.checked_shl(m).filter(|&v| v <= limit).ok_or(Error::OrderLimitExceeded { order: usize::MAX, limit })?;
    let ys = 2 * n + 1;
    let order = xs * ys;
    if order > limit {
        return Err(Error::OrderLimitExceeded { order, limit });
    }
    let g = FiniteGroup::from_fn(order, None, |p, q| {
        let (i, a) = (p / ys, p % ys);
        let (j, b) = (q / ys, q % ys);
        let a = if j % 2 == 1 { (ys - a) % ys } else { a };
        ((i + j) % xs) * ys + (a + b) % ys
    })?;
    let names = (0..order).map(|id| normal_form_name(id / ys, id % ys)).collect();
    Ok(g.with_names(names))
}

fn normal_form_name(i: usize, a: usize) -> String {
    let x = match i {
        0 => String::new(),
        1 => "x".into(),
        _ => format!("x^{i}"),
    };
    let y = match a {
        0 => String::new(),
        1 => "y".into(),
        _ => format!("y^{a}"),
    };
    match (x.is_empty(), y.is_empty()) {
        (true, true) => "1".into(),
        (false, false) => format!("{x}*{y}"),
        _ => x + &y,
    }
}

pub fn quaternion_presentation(n: usize) -> String {
    format!("< x,y | y^{}, x^2 = y^{n}, x*y*x^-1*y >", 2 * n)
}

pub fn dihedral_type_presentation(m: u32, n: usize) -> String {
    format!("< x,y | x^{}, y^{}, x*y*x^-1*y >", 1u64 << m, 2 * n + 1)
}

pub const P48_PRESENTATION: &str = "< x,y | x^2 = (x*y)^3 = y^4, x^4 >";
pub const P120_PRESENTATION: &str = "< x,y | x^2 = (x*y)^3 = y^5, x^4 >";

pub fn p_prime_presentation(m: u32) -> String {
    format!("< x,y,z | x^2 = (x*y)^2 = y^2, z*x*z^-1 = y, z*y*z^-1 = x*y, z^{} >", 3u64.pow(m))
}

fn realize_text(text: &str, limit: usize) -> Result<PresentedGroup> {
    realize_text_with(text, limit, DEFAULT_MAX_COSETS)
}

fn realize_text_with(text: &str, limit: usize, max_cosets: usize) -> Result<PresentedGroup> {
    let p = parse_presentation(text)?;
    let g = todd_coxeter(&p, max_cosets)?;
    if g.group.order() > limit {
        return Err(Error::OrderLimitExceeded { order: g.group.order(), limit });
    }
    Ok(g)
}

/// Binary octahedral group, order 48.
pub fn make_binary_octahedral() -> Result<PresentedGroup> {
    realize_text(P48_PRESENTATION, DEFAULT_ORDER_LIMIT)
}

/// Binary icosahedral group, order 120.
pub fn make_binary_icosahedral() -> Result<PresentedGroup> {
    realize_text(P120_PRESENTATION, DEFAULT_ORDER_LIMIT)
}

/// `P'_{8 * 3^m}`; `m = 1` gives the order-24 group.
pub fn make_p_prime(m: u32) -> Result<PresentedGroup> {
    make_p_prime_with_limit(m, DEFAULT_ORDER_LIMIT)
}

pub fn make_p_prime_with_limit(m: u32, limit: usize) -> Result<PresentedGroup> {
    if m < 1 {
        return Err(Error::Invalid("P' needs m >= 1".into()));
    }
    let order = 3usize.checked_pow(m).and_then(|p| p.checked_mul(8)).unwrap_or(usize::MAX);
    if order > limit {
        return Err(Error::OrderLimitExceeded { order, limit });
    }
    realize_text(&p_prime_presentation(m), limit)
}

pub const SMALL_NAMES: &[&str] = &["Z<n>", "V4", "E8", "S3", "S4", "A4", "D8"];

/// Test stock groups from permutation generators (cyclic groups from the
/// additive table).
pub fn make_small(name: &str) -> Result<FiniteGroup> {
    let perms = |cycles: &[&str], degree: usize| -> Result<FiniteGroup> {
        let gens = cycles.iter().map(|c| parse_cycles(c, degree)).collect::<Result<Vec<_>>>()?;
        FiniteGroup::from_permutation_generators(&gens, DEFAULT_ORDER_LIMIT)
    };
    match name {
        "V4" => perms(&["(0 1)(2 3)", "(0 2)(1 3)"], 4),
        "E8" => perms(&["(0 1)", "(2 3)", "(4 5)"], 6),
        "S3" => perms(&["(0 1)", "(0 1 2)"], 3),
        "S4" => perms(&["(0 1)", "(0 1 2 3)"], 4),
        "A4" => perms(&["(0 1 2)", "(0 1)(2 3)"], 4),
        "D8" => perms(&["(0 2)", "(0 1 2 3)"], 4),
        _ => {
            let n = name
                .strip_prefix('Z')
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::UnknownName(name.to_string()))?;
            if n > DEFAULT_ORDER_LIMIT {
                return Err(Error::OrderLimitExceeded { order: n, limit: DEFAULT_ORDER_LIMIT });
            }
            let g = FiniteGroup::from_fn(n, None, |a, b| (a + b) % n)?;
            Ok(g.with_names((0..n).map(|a| a.to_string()).collect()))
        }
    }
}

pub fn small_presentation(name: &str) -> Option<String> {
    Some(match name {
        "V4" => "< a,b | a^2, b^2, (a*b)^2 >".into(),
        "E8" => "< a,b,c | a^2, b^2, c^2, (a*b)^2, (a*c)^2, (b*c)^2 >".into(),
        "S3" => "< a,b | a^2, b^3, (a*b)^2 >".into(),
        "S4" => "< a,b | a^2, b^3, (a*b)^4 >".into(),
        "A4" => "< a,b | a^2, b^3, (a*b)^3 >".into(),
        "D8" => "< a,b | a^2, b^4, (a*b)^2 >".into(),
        _ => {
            let n: usize = name.strip_prefix('Z')?.parse().ok().filter(|&n| n >= 1)?;
            format!("< a | a^{n} >")
        }
    })
}

/// What a catalog group is expected to satisfy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Vec<u64>,
    pub expected_order: usize,
    pub expected_center_order: usize,
    /// Known circle count, when the group has one pinned.
    pub expected_circles: Option<i64>,
    /// Where `expected_circles` comes from, e.g. `"n^2-1"`.
    pub circles_formula: Option<String>,
    pub presentation_text: String,
}

/// A parsed `NAME[,params]` catalog reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogSpec {
    pub name: String,
    pub params: Vec<u64>,
}

impl std::str::FromStr for CatalogSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(',').map(str::trim);
        let name = parts.next().filter(|n| !n.is_empty()).ok_or_else(|| Error::Invalid("empty catalog name".into()))?;
        let params = parts
            .map(|p| p.parse::<u64>().map_err(|_| Error::Invalid(format!("bad catalog parameter `{p}` in `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        let name = match name {
            "P'" | "Pp" => "Pprime",
            other => other,
        };
        Ok(CatalogSpec { name: name.to_string(), params })
    }
}

fn param(spec: &CatalogSpec, i: usize, default: Option<u64>) -> Result<u64> {
    spec.params
        .get(i)
        .copied()
        .or(default)
        .ok_or_else(|| Error::Invalid(format!("catalog group `{}` needs parameter #{}", spec.name, i + 1)))
}

impl CatalogSpec {
    pub fn entry(&self) -> Result<CatalogEntry> {
        let e = |expected_order, expected_center_order, circles: Option<(i64, &str)>, text: String| CatalogEntry {
            name: self.name.clone(),
            params: self.params.clone(),
            expected_order,
            expected_center_order,
            expected_circles: circles.map(|c| c.0),
            circles_formula: circles.map(|c| c.1.to_string()),
            presentation_text: text,
        };
        Ok(match self.name.as_str() {
            "Q" => {
                let n = param(self, 0, None)? as usize;
                if !(2..=1 << 20).contains(&n) {
                    return Err(Error::Invalid(format!("Q needs 2 <= n <= 2^20, got {n}")));
                }
                let c = (n * n) as i64 - 1;
                e(4 * n, 2, Some((c, "n^2-1")), quaternion_presentation(n))
            }
            "P48" => e(48, 2, Some((167, "computed")), P48_PRESENTATION.into()),
            "P120" => e(120, 2, Some((1079, "computed")), P120_PRESENTATION.into()),
            "D" => {
                let m = param(self, 0, None)?;
                let n = param(self, 1, None)? as usize;
                if !(2..=20).contains(&m) || n < 1 {
                    return Err(Error::Invalid(format!("D needs 2 <= m <= 20 and n >= 1, got ({m}, {n})")));
                }
                let m = m as u32;
                let odd = (n as i64).saturating_mul(2).saturating_add(1);
                let two_m = 1usize.checked_shl(m).unwrap_or(0);
                e(
                    two_m.saturating_mul(n.saturating_mul(2).saturating_add(1)),
                    two_m / 2,
                    Some((odd.saturating_mul(odd) - 1, "(2n+1)^2-1")),
                    dihedral_type_presentation(m, n),
                )
            }
            "Pprime" => {
                let m = param(self, 0, Some(1))?;
                if !(1..=12).contains(&m) {
                    return Err(Error::Invalid(format!("P' needs 1 <= m <= 12, got {m}")));
                }
                let m = m as u32;
                let order = 8 * 3usize.pow(m);
                e(order, 2 * 3usize.pow(m - 1), Some((39, "m-independent")), p_prime_presentation(m))
            }
            name => {
                let text = small_presentation(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
                let (order, center, circles): (usize, usize, Option<(i64, &str)>) = match name {
                    "V4" => (4, 4, Some((0, "abelian"))),
                    "E8" => (8, 8, Some((0, "abelian"))),
                    "S3" => (6, 1, Some((8, "(2n+1)^2-1 at n=1"))),
                    "S4" => (24, 1, None),
                    "A4" => (12, 1, Some((30, "index count"))),
                    "D8" => (8, 2, Some((3, "index count"))),
                    _ => {
                        let n: usize = name[1..].parse().expect("checked by small_presentation");
                        (n, n, Some((0, "abelian")))
                    }
                };
                e(order, center, circles, text)
            }
        })
    }

    /// The group, built from its normal form or stock generators when it has
    /// one and by coset enumeration otherwise.
    pub fn realize(&self, limit: usize) -> Result<FiniteGroup> {
        self.realize_with_limits(limit, DEFAULT_MAX_COSETS)
    }

    pub fn realize_with_limits(&self, limit: usize, max_cosets: usize) -> Result<FiniteGroup> {
        let entry = self.entry()?;
        if entry.expected_order > limit {
            return Err(Error::OrderLimitExceeded { order: entry.expected_order, limit });
        }
        match self.name.as_str() {
            "Q" => make_quaternion_with_limit(entry.expected_order / 4, limit),
            "D" => make_dihedral_type_with_limit(self.params[0] as u32, self.params[1] as usize, limit),
            "P48" | "P120" | "Pprime" => Ok(realize_text_with(&entry.presentation_text, limit, max_cosets)?.group),
            name => make_small(name),
        }
    }

    pub fn realize_from_presentation(&self, limit: usize) -> Result<PresentedGroup> {
        realize_text(&self.entry()?.presentation_text, limit)
    }
}

/// The catalog as published: every family member the reproduction suite uses
/// plus the small stock.
pub fn standard_entries() -> Vec<CatalogSpec> {
    let mut out = Vec::new();
    let spec = |name: &str, params: &[u64]| CatalogSpec { name: name.into(), params: params.to_vec() };
    for n in 2..=6 {
        out.push(spec("Q", &[n]));
    }
    out.push(spec("P48", &[]));
    out.push(spec("P120", &[]));
    for (m, n) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        out.push(spec("D", &[m, n]));
    }
    out.push(spec("Pprime", &[1]));
    for name in ["Z1", "Z2", "Z3", "Z6", "V4", "E8", "S3", "S4", "A4", "D8"] {
        out.push(spec(name, &[]));
    }
    out
}
