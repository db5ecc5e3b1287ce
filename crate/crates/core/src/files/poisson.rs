use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::algebra::{coisotrope_check, poisson_axiom_report, poisson_reduce, DimPoisson, GradedPolyRing, Poly, Reduced};
use crate::dim::Dim;
use crate::report::Report;

use super::InputError;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub dim: Vec<i64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub left: String,
    pub right: String,
    /// A polynomial in the generators, e.g. `"2*q*p + 1"`.
    pub value: String,
}

/// The JSON form of a Poisson algebra on a graded polynomial ring.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoissonSpec {
    pub generators: Vec<GeneratorSpec>,
    pub product_dim: Vec<i64>,
    pub bracket_dim: Vec<i64>,
    #[serde(default)]
    pub brackets: Vec<BracketSpec>,
    /// Generators spanning a monomial ideal, for coisotrope checks and
    /// reduction.
    #[serde(default)]
    pub ideal: Vec<String>,
}

/// A loaded description. The bracket is kept as written so that broken
/// tables can be reported rather than refused.
#[derive(Clone, Debug)]
pub struct PoissonFile {
    pub poisson: DimPoisson,
    pub ideal: Vec<usize>,
}

impl PoissonFile {
    pub fn load(src: &str) -> Result<Self, InputError> {
        let spec: PoissonSpec = serde_json::from_str(src).map_err(InputError::json)?;
        let k = spec.product_dim.len();
        if spec.bracket_dim.len() != k || spec.generators.iter().any(|g| g.dim.len() != k) {
            return Err(InputError::shape(format!("every dimension vector must have length {k}")));
        }
        let ring = GradedPolyRing::new(
            spec.generators.iter().map(|g| g.name.clone()).collect(),
            spec.generators.iter().map(|g| Dim(g.dim.clone())).collect(),
            Dim(spec.product_dim.clone()),
        )
        .map_err(|e| InputError::shape(e.to_string()))?;
        let b = Dim(spec.bracket_dim.clone());
        let index = |s: &str| ring.index(s).ok_or_else(|| InputError::shape(format!("unknown generator `{s}`")));
        let mut pairs = Vec::new();
        for br in &spec.brackets {
            let (i, j) = (index(&br.left)?, index(&br.right)?);
            let value = ring.parse(&br.value).map_err(|e| InputError::shape(format!("bracket {{{}, {}}}: {e}", br.left, br.right)))?;
            // A literal 0 parses into the unit's slice; move it where it belongs.
            let value = if value.is_zero() { ring.zero(b.plus(ring.gen_dim(i)).plus(ring.gen_dim(j))) } else { value };
            pairs.push((i, j, value));
        }
        let poisson = DimPoisson::from_pairs_unchecked(&ring, b, pairs).map_err(|e| InputError::shape(e.to_string()))?;
        let ideal = spec.ideal.iter().map(|s| index(s)).collect::<Result<_, _>>()?;
        Ok(PoissonFile { poisson, ideal })
    }

    pub fn ring(&self) -> &GradedPolyRing {
        self.poisson.ring()
    }

    pub fn parse(&self, src: &str) -> Result<Poly, InputError> {
        self.ring().parse(src).map_err(|e| InputError::shape(e.to_string()))
    }

    /// Structure constants, the Poisson identities on seeded random triples
    /// of degree at most `max_degree`, and the coisotrope conditions when an
    /// ideal is given.
    pub fn check(&self, count: usize, max_degree: u32, seed: u64) -> Vec<Report> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = vec![self.poisson.structure_report(), poisson_axiom_report(&self.poisson, count, max_degree, &mut rng)];
        if !self.ideal.is_empty() {
            out.push(coisotrope_check(&self.poisson, &self.ideal, count, &mut rng));
        }
        out
    }

    pub fn reduce(&self, cutoff: u32) -> crate::Result<Reduced> {
        let rep = self.poisson.structure_report();
        if let Some(f) = rep.failures().next() {
            return Err(crate::AlgebraError::Invalid(format!(
                "not a Poisson bracket: {} fails at {}",
                f.law,
                f.witness.as_deref().unwrap_or("?")
            )));
        }
        poisson_reduce(&self.poisson, &self.ideal, cutoff)
    }
}
