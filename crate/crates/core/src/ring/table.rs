use rand::{Rng, RngCore};

use crate::dim::{Dim, DimMonoid};
use crate::error::{AlgebraError, Result};

use super::DimRing;

/// A finite dimensioned ring given by explicit tables over named elements.
///
/// Construction only checks that the tables are well formed; the ring laws
/// themselves are left to [`super::ring_axiom_report`] so that broken tables
/// can be inspected rather than refused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRing {
    monoid: DimMonoid,
    names: Vec<String>,
    dims: Vec<Dim>,
    add: Vec<Vec<Option<usize>>>,
    mul: Vec<Vec<usize>>,
    one: usize,
    commutative: bool,
    zeros: Vec<(Dim, usize)>,
}

impl TableRing {
    /// `add[a][b]` must be present exactly when `a` and `b` share a slice.
    pub fn new(
        monoid: DimMonoid,
        names: Vec<String>,
        dims: Vec<Dim>,
        add: Vec<Vec<Option<usize>>>,
        mul: Vec<Vec<usize>>,
        one: usize,
        commutative: bool,
    ) -> Result<Self> {
        let n = names.len();
        let bad = |msg: String| Err(AlgebraError::Invalid(msg));
        if dims.len() != n || add.len() != n || mul.len() != n {
            return bad("element, dimension and table sizes differ".into());
        }
        if one >= n {
            return bad("unit element out of range".into());
        }
        for d in &dims {
            monoid.check(d)?;
        }
        if let Some(all) = monoid.elements() {
            if let Some(d) = all.iter().find(|d| !dims.contains(d)) {
                return bad(format!("dimension {d} has an empty slice"));
            }
        }
        for a in 0..n {
            if add[a].len() != n || mul[a].len() != n || mul[a].iter().any(|&c| c >= n) {
                return bad(format!("table row for {} is malformed", names[a]));
            }
            for b in 0..n {
                match add[a][b] {
                    Some(c) if c >= n => return bad(format!("{} + {} out of range", names[a], names[b])),
                    Some(_) if dims[a] != dims[b] => {
                        return bad(format!("{} + {} crosses slices", names[a], names[b]))
                    }
                    None if dims[a] == dims[b] => {
                        return bad(format!("{} + {} missing within slice {}", names[a], names[b], dims[a]))
                    }
                    _ => {}
                }
            }
        }
        let mut zeros = Vec::new();
        for d in dims.iter() {
            if zeros.iter().any(|(z, _): &(Dim, usize)| z == d) {
                continue;
            }
            let slice: Vec<usize> = (0..n).filter(|&i| dims[i] == *d).collect();
            // Fall back to the first element; the report flags the missing identity.
            let z = slice
                .iter()
                .copied()
                .find(|&z| slice.iter().all(|&x| add[z][x] == Some(x) && add[x][z] == Some(x)))
                .unwrap_or(slice[0]);
            zeros.push((d.clone(), z));
        }
        Ok(TableRing { monoid, names, dims, add, mul, one, commutative, zeros })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn slice(&self, d: &Dim) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.dims[i] == *d).collect()
    }
}

impl DimRing for TableRing {
    type Elem = usize;

    fn monoid(&self) -> &DimMonoid {
        &self.monoid
    }

    fn dim(&self, a: &usize) -> Dim {
        self.dims[*a].clone()
    }

    fn add(&self, a: &usize, b: &usize) -> Result<usize> {
        self.add[*a][*b].ok_or_else(|| AlgebraError::DimensionMismatch {
            left: self.dims[*a].clone(),
            right: self.dims[*b].clone(),
        })
    }

    fn neg(&self, a: &usize) -> usize {
        let z = self.zeros.iter().find(|(d, _)| *d == self.dims[*a]).map(|p| p.1);
        self.slice(&self.dims[*a]).into_iter().find(|&y| self.add[*a][y] == z).unwrap_or(*a)
    }

    fn zero(&self, d: &Dim) -> Result<usize> {
        self.zeros
            .iter()
            .find(|(z, _)| z == d)
            .map(|p| p.1)
            .ok_or_else(|| AlgebraError::UnknownDimension(d.clone()))
    }

    fn one(&self) -> usize {
        self.one
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.mul[*a][*b]
    }

    fn is_commutative(&self) -> bool {
        self.commutative
    }

    fn probes(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> usize {
        rng.gen_range(0..self.len())
    }

    fn elements(&self) -> Option<Vec<usize>> {
        Some(self.probes())
    }

    fn describe(&self, a: &usize) -> String {
        self.names[*a].clone()
    }

    fn reciprocal(&self, a: &usize) -> Result<usize> {
        (0..self.len())
            .find(|&y| self.mul[*a][y] == self.one && self.mul[y][*a] == self.one)
            .ok_or(AlgebraError::DivisionByZero)
    }
}
