use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Rational;

use super::polynomial::Polynomial;

/// Inverse of a square rational matrix (rows of `m`), or `None` if singular.
pub fn invert_matrix(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::ONE } else { Rational::ZERO }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].checked_inv().ok()?;
        for v in a[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (v, p) in a[r].iter_mut().zip(&pivot_row) {
                    *v = &*v - &(&f * p);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant of a small integer matrix by fraction-free elimination.
pub fn determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Simplicial full-dimensional cone with its dual linear forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    /// Ray generators, one per entry.
    generators: Vec<Vec<i64>>,
    /// `dual[j]·generators[i] = δ_ij`.
    dual: Vec<Vec<Rational>>,
}

impl Cone {
    pub fn new(generators: Vec<Vec<i64>>) -> Result<Cone> {
        let n = generators.len();
        if n == 0 || generators.iter().any(|g| g.len() != n) {
            return Err(Error::Geometry(format!(
                "cone needs {n} generators of length {n}"
            )));
        }
        // columns are generators; the inverse has the dual forms as rows
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| Rational::from_int(generators[j][i])).collect())
            .collect();
        let dual = invert_matrix(&cols)
            .ok_or_else(|| Error::Geometry(format!("generators {generators:?} are linearly dependent")))?;
        Ok(Cone { generators, dual })
    }

    pub fn orthant(n: usize) -> Cone {
        let gens = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        Cone::new(gens).expect("identity basis")
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn dual_forms(&self) -> &[Vec<Rational>] {
        &self.dual
    }

    /// Dual forms as linear polynomials in the ambient coordinates.
    pub fn dual_polynomials(&self) -> Vec<Polynomial> {
        self.dual.iter().map(|r| Polynomial::linear(r)).collect()
    }

    pub fn det(&self) -> i64 {
        determinant(&self.generators)
    }

    pub fn is_smooth(&self) -> bool {
        self.det().abs() == 1
    }

    /// Coordinates of `v` in the generator basis.
    pub fn coordinates(&self, v: &[Rational]) -> Vec<Rational> {
        self.dual
            .iter()
            .map(|row| row.iter().zip(v).fold(Rational::ZERO, |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    pub fn coordinates_int(&self, v: &[i64]) -> Vec<Rational> {
        let v: Vec<Rational> = v.iter().map(|&x| Rational::from_int(x)).collect();
        self.coordinates(&v)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).iter().all(|c| !c.is_negative())
    }

    pub fn contains_in_interior(&self, v: &[Rational]) -> bool {
        self.coordinates(v).iter().all(|c| !c.is_negative() && !c.is_zero())
    }

    /// Matrix expressing this cone's dual forms in the dual coordinates of
    /// `base`: row `j` gives `x^self_j` as a combination of the `x^base_i`.
    pub fn forms_in(&self, base: &Cone) -> Vec<Vec<Rational>> {
        self.dual
            .iter()
            .map(|row| {
                base.generators
                    .iter()
                    .map(|g| row.iter().zip(g).fold(Rational::ZERO, |acc, (a, &b)| &acc + &(a * &Rational::from_int(b))))
                    .collect()
            })
            .collect()
    }

    /// The generators shared with `other`.
    pub fn common_rays(&self, other: &Cone) -> Vec<Vec<i64>> {
        self.generators
            .iter()
            .filter(|g| other.generators.contains(g))
            .cloned()
            .collect()
    }
}

pub fn is_primitive(v: &[i64]) -> bool {
    v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x)) == 1
}
