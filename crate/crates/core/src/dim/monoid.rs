use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};

/// A dimension: an element of some [`DimMonoid`] or of a finite plain set.
///
/// The encoding is a fixed-arity integer vector whose interpretation belongs
/// to the owning monoid: components for `Z^k`, a residue for `Z/n`, the empty
/// vector for the trivial monoid, the image list of a self-map, or an index
/// into an explicit table. Pairs `(d, e)` of a product set are concatenations.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Dim(pub Vec<i64>);

impl Dim {
    pub fn new(v: impl Into<Vec<i64>>) -> Self {
        Dim(v.into())
    }

    pub fn scalar(x: i64) -> Self {
        Dim(vec![x])
    }

    pub fn unit() -> Self {
        Dim(Vec::new())
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// Concatenation, the encoding of `(self, other)` in a product set.
    pub fn pair(&self, other: &Dim) -> Dim {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Dim(v)
    }

    /// Inverse of [`Dim::pair`] given the arity of the left factor.
    pub fn split(&self, left_arity: usize) -> (Dim, Dim) {
        let (l, r) = self.0.split_at(left_arity.min(self.0.len()));
        (Dim(l.to_vec()), Dim(r.to_vec()))
    }

    /// Componentwise sum; the additive notation used for `Z^k` dimensions.
    pub fn plus(&self, other: &Dim) -> Dim {
        debug_assert_eq!(self.arity(), other.arity());
        Dim(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn minus(&self, other: &Dim) -> Dim {
        debug_assert_eq!(self.arity(), other.arity());
        Dim(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, n: i64) -> Dim {
        Dim(self.0.iter().map(|a| a * n).collect())
    }

    pub fn is_zero_vector(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Vec<i64>> for Dim {
    fn from(v: Vec<i64>) -> Self {
        Dim(v)
    }
}

impl<const N: usize> From<[i64; N]> for Dim {
    fn from(v: [i64; N]) -> Self {
        Dim(v.to_vec())
    }
}

/// An associative unital operation on dimensions.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum DimMonoid {
    /// `Z^k` under componentwise addition.
    FreeAbelian { rank: usize },
    /// `Z/n` under addition mod `n`.
    Cyclic { order: u64 },
    /// The one-element monoid `{1}`.
    Trivial,
    /// All self-maps of `{0, .., size-1}` under composition; `x ∘ y` applies
    /// `y` first. Not commutative for `size > 1`.
    Maps { size: usize },
    /// A finite monoid given by its multiplication table over named elements.
    Table { names: Vec<String>, table: Vec<Vec<usize>>, identity: usize },
}

impl fmt::Display for DimMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimMonoid::FreeAbelian { rank } => write!(f, "Z^{rank}"),
            DimMonoid::Cyclic { order } => write!(f, "Z/{order}"),
            DimMonoid::Trivial => write!(f, "{{1}}"),
            DimMonoid::Maps { size } => write!(f, "Map({size})"),
            DimMonoid::Table { names, .. } => write!(f, "Table({})", names.join(",")),
        }
    }
}

impl DimMonoid {
    pub fn free(rank: usize) -> Self {
        DimMonoid::FreeAbelian { rank }
    }

    pub fn cyclic(order: u64) -> Self {
        assert!(order > 0, "cyclic order must be positive");
        DimMonoid::Cyclic { order }
    }

    pub fn maps(size: usize) -> Self {
        DimMonoid::Maps { size }
    }

    /// Builds a table monoid, rejecting non-associative or non-unital tables.
    pub fn table(names: Vec<String>, table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = names.len();
        if n == 0 || identity >= n {
            return Err(AlgebraError::Invalid("table monoid needs an identity element".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&c| c >= n)) {
            return Err(AlgebraError::Invalid("table monoid must be a total n x n table".into()));
        }
        for x in 0..n {
            if table[identity][x] != x || table[x][identity] != x {
                return Err(AlgebraError::Invalid(format!(
                    "{} is not a two-sided identity (fails at {})",
                    names[identity], names[x]
                )));
            }
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return Err(AlgebraError::Invalid(format!(
                            "table monoid is not associative at ({}, {}, {})",
                            names[x], names[y], names[z]
                        )));
                    }
                }
            }
        }
        Ok(DimMonoid::Table { names, table, identity })
    }

    /// Number of integers in the encoding of each element.
    pub fn arity(&self) -> usize {
        match self {
            DimMonoid::FreeAbelian { rank } => *rank,
            DimMonoid::Cyclic { .. } | DimMonoid::Table { .. } => 1,
            DimMonoid::Trivial => 0,
            DimMonoid::Maps { size } => *size,
        }
    }

    pub fn contains(&self, d: &Dim) -> bool {
        if d.arity() != self.arity() {
            return false;
        }
        match self {
            DimMonoid::FreeAbelian { .. } | DimMonoid::Trivial => true,
            DimMonoid::Cyclic { order } => d.0[0] >= 0 && (d.0[0] as u64) < *order,
            DimMonoid::Maps { size } => d.0.iter().all(|&x| x >= 0 && (x as usize) < *size),
            DimMonoid::Table { names, .. } => d.0[0] >= 0 && (d.0[0] as usize) < names.len(),
        }
    }

    pub fn check(&self, d: &Dim) -> Result<()> {
        if self.contains(d) {
            Ok(())
        } else {
            Err(AlgebraError::NotInMonoid { dim: d.clone(), monoid: self.to_string() })
        }
    }

    pub fn identity(&self) -> Dim {
        match self {
            DimMonoid::FreeAbelian { rank } => Dim(vec![0; *rank]),
            DimMonoid::Cyclic { .. } => Dim(vec![0]),
            DimMonoid::Trivial => Dim::unit(),
            DimMonoid::Maps { size } => Dim((0..*size as i64).collect()),
            DimMonoid::Table { identity, .. } => Dim(vec![*identity as i64]),
        }
    }

    pub fn combine(&self, x: &Dim, y: &Dim) -> Result<Dim> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.combine_unchecked(x, y))
    }

    pub(crate) fn combine_unchecked(&self, x: &Dim, y: &Dim) -> Dim {
        match self {
            DimMonoid::FreeAbelian { .. } => x.plus(y),
            DimMonoid::Cyclic { order } => {
                Dim(vec![((x.0[0] + y.0[0]).rem_euclid(*order as i64))])
            }
            DimMonoid::Trivial => Dim::unit(),
            DimMonoid::Maps { .. } => Dim(y.0.iter().map(|&i| x.0[i as usize]).collect()),
            DimMonoid::Table { table, .. } => Dim(vec![table[x.0[0] as usize][y.0[0] as usize] as i64]),
        }
    }

    pub fn is_group(&self) -> bool {
        match self {
            DimMonoid::FreeAbelian { .. } | DimMonoid::Cyclic { .. } | DimMonoid::Trivial => true,
            DimMonoid::Maps { size } => *size <= 1,
            DimMonoid::Table { table, identity, .. } => {
                table.iter().all(|row| row.contains(identity))
            }
        }
    }

    pub fn is_commutative(&self) -> bool {
        match self {
            DimMonoid::FreeAbelian { .. } | DimMonoid::Cyclic { .. } | DimMonoid::Trivial => true,
            DimMonoid::Maps { size } => *size <= 1,
            DimMonoid::Table { table, .. } => {
                let n = table.len();
                (0..n).all(|x| (0..n).all(|y| table[x][y] == table[y][x]))
            }
        }
    }

    /// The inverse of `x`, present exactly when the monoid is a group.
    pub fn inverse(&self, x: &Dim) -> Option<Dim> {
        if !self.contains(x) {
            return None;
        }
        match self {
            DimMonoid::FreeAbelian { .. } => Some(x.scaled(-1)),
            DimMonoid::Cyclic { order } => Some(Dim(vec![(-x.0[0]).rem_euclid(*order as i64)])),
            DimMonoid::Trivial => Some(Dim::unit()),
            DimMonoid::Maps { size } => (*size <= 1).then(|| x.clone()),
            DimMonoid::Table { table, identity, .. } => {
                let i = x.0[0] as usize;
                (0..table.len())
                    .find(|&j| table[i][j] == *identity && table[j][i] == *identity)
                    .map(|j| Dim(vec![j as i64]))
            }
        }
    }

    /// Some `h` with `h ∘ by = target`, unique when the monoid is a group.
    pub fn divide(&self, target: &Dim, by: &Dim) -> Option<Dim> {
        if let Some(inv) = self.inverse(by) {
            return Some(self.combine_unchecked(target, &inv));
        }
        self.elements()?.into_iter().find(|h| self.combine_unchecked(h, by) == *target)
    }

    /// `x^n` for `n >= 0`; negative `n` uses the inverse.
    pub fn power(&self, x: &Dim, n: i64) -> Result<Dim> {
        self.check(x)?;
        let base = if n < 0 {
            self.inverse(x).ok_or_else(|| AlgebraError::NotAGroup(self.to_string()))?
        } else {
            x.clone()
        };
        let mut acc = self.identity();
        for _ in 0..n.unsigned_abs() {
            acc = self.combine_unchecked(&acc, &base);
        }
        Ok(acc)
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, DimMonoid::FreeAbelian { rank } if *rank > 0)
    }

    /// Every element, for finite monoids.
    pub fn elements(&self) -> Option<Vec<Dim>> {
        match self {
            DimMonoid::FreeAbelian { rank } => (*rank == 0).then(|| vec![Dim::unit()]),
            DimMonoid::Cyclic { order } => Some((0..*order as i64).map(Dim::scalar).collect()),
            DimMonoid::Trivial => Some(vec![Dim::unit()]),
            DimMonoid::Maps { size } => {
                let n = *size;
                let total = n.checked_pow(n as u32)?;
                let mut out = Vec::with_capacity(total);
                for mut code in 0..total {
                    let mut images = Vec::with_capacity(n);
                    for _ in 0..n {
                        images.push((code % n) as i64);
                        code /= n;
                    }
                    out.push(Dim(images));
                }
                Some(out)
            }
            DimMonoid::Table { names, .. } => Some((0..names.len() as i64).map(Dim::scalar).collect()),
        }
    }

    /// Monoid generators. For `Z^k` these are the unit vectors (inverses are
    /// implied since it is a group).
    pub fn generators(&self) -> Vec<Dim> {
        match self {
            DimMonoid::FreeAbelian { rank } => (0..*rank)
                .map(|i| {
                    let mut v = vec![0; *rank];
                    v[i] = 1;
                    Dim(v)
                })
                .collect(),
            DimMonoid::Cyclic { order } if *order > 1 => vec![Dim::scalar(1)],
            DimMonoid::Cyclic { .. } | DimMonoid::Trivial => Vec::new(),
            _ => self.elements().unwrap_or_default(),
        }
    }

    /// The documented probe set: every element of a finite monoid, and for
    /// `Z^k` every word of length at most `max_len` in the generators and
    /// their inverses (vectors of l1-norm at most `max_len`).
    pub fn probe_elements(&self, max_len: usize) -> Vec<Dim> {
        match self {
            DimMonoid::FreeAbelian { rank } if *rank > 0 => {
                let mut out = vec![Dim(vec![0; *rank])];
                let mut frontier = out.clone();
                for _ in 0..max_len {
                    let mut next = Vec::new();
                    for d in &frontier {
                        for i in 0..*rank {
                            for s in [-1, 1] {
                                let mut v = d.0.clone();
                                v[i] += s;
                                let cand = Dim(v);
                                if !out.contains(&cand) && !next.contains(&cand) {
                                    next.push(cand);
                                }
                            }
                        }
                    }
                    out.extend(next.iter().cloned());
                    frontier = next;
                }
                out.sort();
                out
            }
            _ => self.elements().unwrap_or_default(),
        }
    }
}
