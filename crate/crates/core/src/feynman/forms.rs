use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Symmetric invertible matrix `Q_ij` with its cached inverse `Q^{ij}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    n: usize,
    entries: Vec<Vec<Scalar>>,
    inverse: Vec<Vec<Scalar>>,
}

impl QuadraticForm {
    pub fn new(entries: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidArgument("quadratic form of dimension 0".into()));
        }
        if let Some(i) = entries.iter().position(|r| r.len() != n) {
            return Err(Error::InvalidArgument(format!(
                "row {i} of the quadratic form has {} entries, expected {n}",
                entries[i].len()
            )));
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InvalidArgument(format!(
                        "quadratic form is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let inverse = invert(&entries)
            .ok_or_else(|| Error::Domain("quadratic form is singular".into()))?;
        Ok(QuadraticForm {
            n,
            entries,
            inverse,
        })
    }

    /// Diagonal form.
    pub fn diagonal(values: &[Scalar]) -> Result<Self> {
        let n = values.len();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { values[i].clone() } else { Scalar::zero() })
                    .collect()
            })
            .collect();
        Self::new(rows)
    }

    /// Parses a JSON matrix such as `[[1, "1/2"], ["1/2", 2]]`.
    pub fn parse_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("column {}", e.column()), e.to_string()))?;
        let rows = v
            .as_array()
            .ok_or_else(|| Error::parse("matrix", "expected a JSON array of rows"))?;
        let entries = rows
            .iter()
            .enumerate()
            .map(|(i, r)| scalar_row(r, &format!("row {i}")))
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i][j]
    }

    /// `Q^{ij}`.
    pub fn inverse_entry(&self, i: usize, j: usize) -> &Scalar {
        &self.inverse[i][j]
    }

    pub fn inverse(&self) -> &[Vec<Scalar>] {
        &self.inverse
    }
}

fn invert(m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].inv()?;
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for k in 0..2 * n {
                let sub = &f * &a[col][k];
                a[r][k] -= sub;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Fully symmetric trilinear form `C_ijk`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicForm {
    n: usize,
    entries: Vec<Scalar>,
}

impl CubicForm {
    pub fn new(entries: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidArgument("cubic form of dimension 0".into()));
        }
        let mut flat = Vec::with_capacity(n * n * n);
        for (i, plane) in entries.iter().enumerate() {
            if plane.len() != n || plane.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidArgument(format!(
                    "slice {i} of the cubic form is not {n}x{n}"
                )));
            }
            for row in plane {
                flat.extend(row.iter().cloned());
            }
        }
        let c = CubicForm { n, entries: flat };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = c.get(i, j, k);
                    if v != c.get(j, i, k) || v != c.get(i, k, j) {
                        return Err(Error::InvalidArgument(format!(
                            "cubic form is not symmetric at ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(c)
    }

    /// Symmetric form whose value at `(i, j, k)` is `f` at the sorted triple.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut t = [i, j, k];
                    t.sort_unstable();
                    entries.push(f(t[0], t[1], t[2]));
                }
            }
        }
        CubicForm { n, entries }
    }

    /// Parses a JSON rank-3 array such as `[[[1]]]`.
    pub fn parse_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("column {}", e.column()), e.to_string()))?;
        let planes = v
            .as_array()
            .ok_or_else(|| Error::parse("tensor", "expected a JSON array of matrices"))?;
        let mut entries = Vec::new();
        for (i, p) in planes.iter().enumerate() {
            let rows = p
                .as_array()
                .ok_or_else(|| Error::parse(format!("slice {i}"), "expected an array of rows"))?;
            entries.push(
                rows.iter()
                    .enumerate()
                    .map(|(j, r)| scalar_row(r, &format!("slice {i} row {j}")))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Self::new(entries)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.entries[(i * self.n + j) * self.n + k]
    }
}

fn scalar_row(v: &Value, loc: &str) -> Result<Vec<Scalar>> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::parse(loc, "expected an array"))?;
    items
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let here = format!("{loc} entry {k}");
            match x {
                Value::Number(num) => num
                    .as_i64()
                    .map(Scalar::from_int)
                    .ok_or_else(|| Error::parse(here, "use an integer or a quoted rational like \"1/2\"")),
                Value::String(s) => s
                    .parse::<Scalar>()
                    .map_err(|e| Error::parse(here, e.to_string())),
                _ => Err(Error::parse(here, "expected a number or a string")),
            }
        })
        .collect()
}
