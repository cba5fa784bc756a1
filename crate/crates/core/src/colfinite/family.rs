//! Parametric families of column-finite matrices, read from JSON.
//!
//! ```json
//! {"family":"banded","k":3,"band":{"-1":"1","0":"5*w","1":"w^2"},"perturb":[{"i":2,"j":5,"v":"7"}]}
//! ```
//!
//! Band keys are `j - i`. A band value is a scalar or a list cycled along
//! the column index. Perturbations add a finite set of entries.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::lazy::{LazyMatrix, Structure};
use crate::error::{Error, Result};
use crate::scalars::{Cyclotomic, Field};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BandValue {
    Constant(String),
    Periodic(Vec<String>),
}

/// Last nonzero row `l'_m` of column `m` in a staircase.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Schedule {
    /// `"m"`, `"m+1"` or `"2ceil(m/2)"`.
    Named(String),
    /// Explicit prefix; continued by `max(m, last)`.
    Explicit(Vec<usize>),
}

impl Schedule {
    fn compile(&self) -> Result<Arc<dyn Fn(usize) -> usize + Send + Sync>> {
        match self {
            Schedule::Named(s) => match s.replace(' ', "").as_str() {
                "m" => Ok(Arc::new(|m| m)),
                "m+1" => Ok(Arc::new(|m| m + 1)),
                "2ceil(m/2)" => Ok(Arc::new(|m| 2 * m.div_ceil(2))),
                other => Err(Error::Parse(format!("unknown schedule {other:?}"))),
            },
            Schedule::Explicit(v) => {
                if let Some(m) = (0..v.len()).find(|&m| v[m] < m || (m > 0 && v[m] < v[m - 1])) {
                    return Err(Error::Parse(format!("schedule must be nondecreasing with l'_m >= m (index {m})")));
                }
                let v = v.clone();
                Ok(Arc::new(move |m| v.get(m).copied().unwrap_or_else(|| m.max(v.last().copied().unwrap_or(0)))))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Perturbation {
    pub i: usize,
    pub j: usize,
    pub v: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    /// `value·I`.
    Constant { value: String },
    Banded { band: BTreeMap<String, BandValue> },
    /// Lower triangular: `diagonal` on the diagonal and `value` in rows
    /// `m+1 ..= l'_m` of column `m`.
    Staircase {
        schedule: Schedule,
        #[serde(default = "one")]
        value: String,
        #[serde(default = "zero")]
        diagonal: String,
    },
}

fn one() -> String {
    "1".into()
}

fn zero() -> String {
    "0".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    #[serde(flatten)]
    pub family: Family,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub perturb: Vec<Perturbation>,
}

type Entry<E> = Arc<dyn Fn(usize, usize) -> E + Send + Sync>;

impl FamilySpec {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("family spec: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("family specs serialize")
    }

    /// The family over `Q(ζ_k)`.
    pub fn build_exact(&self) -> Result<LazyMatrix<Cyclotomic>> {
        self.build(&Cyclotomic::new(self.k)?)
    }

    pub fn build<F: Field>(&self, field: &F) -> Result<LazyMatrix<F>> {
        let f = field.clone();
        let (shape, base, support): (Structure, Entry<F::Elem>, Arc<dyn Fn(usize) -> usize + Send + Sync>) =
            match &self.family {
                Family::Constant { value } => {
                    let c = f.parse(value)?;
                    let f2 = f.clone();
                    (Structure::Diagonal, Arc::new(move |i, j| if i == j { c.clone() } else { f2.zero() }), Arc::new(|j| j))
                }
                Family::Banded { band } => {
                    let mut bands: Vec<(i64, Vec<F::Elem>)> = Vec::new();
                    for (key, v) in band {
                        let b: i64 =
                            key.trim().parse().map_err(|_| Error::Parse(format!("band key {key:?} is not an integer")))?;
                        let vals = match v {
                            BandValue::Constant(s) => vec![f.parse(s)?],
                            BandValue::Periodic(list) if !list.is_empty() => {
                                list.iter().map(|s| f.parse(s)).collect::<Result<_>>()?
                            }
                            BandValue::Periodic(_) => return Err(Error::Parse(format!("band {b} is empty"))),
                        };
                        bands.push((b, vals));
                    }
                    let lowest = bands.iter().map(|(b, _)| *b).min().unwrap_or(0);
                    let highest = bands.iter().map(|(b, _)| *b).max().unwrap_or(0);
                    let shape = match (lowest >= 0, highest <= 0) {
                        (true, true) => Structure::Diagonal,
                        (true, false) => Structure::Upper,
                        (false, true) => Structure::Lower,
                        (false, false) => Structure::General,
                    };
                    let depth = lowest.min(0).unsigned_abs() as usize;
                    let f2 = f.clone();
                    let entry = move |i: usize, j: usize| {
                        let b = j as i64 - i as i64;
                        match bands.iter().find(|(x, _)| *x == b) {
                            Some((_, vals)) => vals[j % vals.len()].clone(),
                            None => f2.zero(),
                        }
                    };
                    (shape, Arc::new(entry), Arc::new(move |j| j + depth))
                }
                Family::Staircase { schedule, value, diagonal } => {
                    let lp = schedule.compile()?;
                    let (c, dg) = (f.parse(value)?, f.parse(diagonal)?);
                    let f2 = f.clone();
                    let lp2 = lp.clone();
                    let entry = move |i: usize, j: usize| {
                        if i == j {
                            dg.clone()
                        } else if i > j && i <= lp(j) {
                            c.clone()
                        } else {
                            f2.zero()
                        }
                    };
                    (Structure::Lower, Arc::new(entry), Arc::new(move |j| lp2(j).max(j)))
                }
            };
        let mut extra: BTreeMap<(usize, usize), F::Elem> = BTreeMap::new();
        let mut shape = shape;
        for p in &self.perturb {
            let v = f.parse(&p.v)?;
            let slot = extra.entry((p.i, p.j)).or_insert_with(|| f.zero());
            *slot = f.add(slot, &v);
            shape = shape.join(match p.i.cmp(&p.j) {
                std::cmp::Ordering::Equal => Structure::Diagonal,
                std::cmp::Ordering::Less => Structure::Upper,
                std::cmp::Ordering::Greater => Structure::Lower,
            });
        }
        let tall: BTreeMap<usize, usize> = extra.keys().fold(BTreeMap::new(), |mut acc, &(i, j)| {
            let e = acc.entry(j).or_insert(0);
            *e = (*e).max(i);
            acc
        });
        let f2 = f.clone();
        Ok(LazyMatrix::new(
            f,
            shape,
            move |i, j| {
                let b = base(i, j);
                match extra.get(&(i, j)) {
                    Some(x) => f2.add(&b, x),
                    None => b,
                }
            },
            move |j| support(j).max(tall.get(&j).copied().unwrap_or(0)),
        )
        .with_label(self.label()))
    }

    fn label(&self) -> String {
        match &self.family {
            Family::Constant { .. } => "constant".into(),
            Family::Banded { .. } => "banded".into(),
            Family::Staircase { .. } => "staircase".into(),
        }
    }
}
