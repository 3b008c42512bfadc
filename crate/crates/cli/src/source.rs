//! Turning command-line group sources into groups.

use std::fs;
use std::path::{Path, PathBuf};

use ecom_core::catalog::CatalogSpec;
use ecom_core::group::parse_cycles;
use ecom_core::{parse_presentation, todd_coxeter, Error, FiniteGroup, Limits};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Catalog(String),
    Presentation(String),
    Table(PathBuf),
    Perm(String),
}

impl Source {
    pub fn realize(&self, limits: &Limits) -> Result<(FiniteGroup, String), CliError> {
        match self {
            Source::Catalog(text) => {
                let spec: CatalogSpec = text.parse()?;
                Ok((spec.realize_with_limits(limits.max_order, limits.max_cosets)?, text.trim().to_string()))
            }
            Source::Presentation(text) => {
                let p = parse_presentation(text)?;
                let g = todd_coxeter(&p, limits.max_cosets)?.group;
                check_order(&g, limits)?;
                Ok((g, p.to_string()))
            }
            Source::Table(path) => {
                let rows: Vec<Vec<usize>> = serde_json::from_str(&read(path)?).map_err(|e| {
                    CliError::Parse(format!("{}: expected a JSON array of arrays: {e}", path.display()))
                })?;
                if rows.len() > limits.max_order {
                    return Err(Error::OrderLimitExceeded { order: rows.len(), limit: limits.max_order }.into());
                }
                Ok((FiniteGroup::from_multiplication_table(&rows)?, format!("table {}", path.display())))
            }
            Source::Perm(text) => {
                let gens = parse_permutations(text)?;
                let g = FiniteGroup::from_permutation_generators(&gens, limits.max_order)?;
                Ok((g, format!("perm {}", text.trim())))
            }
        }
    }
}

fn check_order(g: &FiniteGroup, limits: &Limits) -> Result<(), Error> {
    if g.order() > limits.max_order {
        return Err(Error::OrderLimitExceeded { order: g.order(), limit: limits.max_order });
    }
    Ok(())
}

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// `;`-separated generators, each in disjoint-cycle notation on points
/// `0..`; the degree is one more than the largest point mentioned.
pub fn parse_permutations(text: &str) -> Result<Vec<Vec<usize>>, CliError> {
    let parts: Vec<&str> = text.split(';').map(str::trim).collect();
    let mut degree = 1;
    for part in &parts {
        for token in part.split(|c: char| !c.is_ascii_digit()).filter(|t| !t.is_empty()) {
            let point: usize = token.parse().map_err(|_| CliError::Parse(format!("bad point `{token}`")))?;
            degree = degree.max(point + 1);
        }
    }
    Ok(parts.iter().map(|p| parse_cycles(p, degree)).collect::<Result<Vec<_>, _>>()?)
}

/// All sources, multiplied together in command-line order.
pub fn realize_all(sources: &[Source], limits: &Limits) -> Result<(FiniteGroup, String), CliError> {
    let mut it = sources.iter();
    let first = it.next().ok_or_else(|| CliError::Parse("no group source given".into()))?;
    let (mut group, mut label) = first.realize(limits)?;
    for s in it {
        let (g, l) = s.realize(limits)?;
        group = group.direct_product(&g, limits.max_order)?;
        label = format!("{label} x {l}");
    }
    Ok((group, label))
}
