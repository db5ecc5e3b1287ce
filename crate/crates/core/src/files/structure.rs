use std::collections::BTreeMap;

use serde::Deserialize;

use crate::dim::{Dim, DimMonoid};
use crate::report::{LawResult, Report};
use crate::ring::{find_unit_section, ring_axiom_report, unit_section_check, Plan, SectionSpec, TableRing};

use super::InputError;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum MonoidSpec {
    Cyclic { cyclic: u64 },
    Table { elements: Vec<String>, identity: String, table: Vec<Vec<String>> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SectionChoice {
    /// `"search"`: look for any unit section exhaustively.
    Search(String),
    /// Dimension name to element name.
    Candidate(BTreeMap<String, String>),
}

/// A finite dimensioned ring written out as tables.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    #[serde(default)]
    pub name: Option<String>,
    pub monoid: MonoidSpec,
    /// Dimension name to the element names of that slice.
    pub slices: BTreeMap<String, Vec<String>>,
    /// Per slice, the addition table in the slice's element order.
    pub add: BTreeMap<String, Vec<Vec<String>>>,
    /// Per element, its row of products in element order: the slices in
    /// monoid order, each in listed order.
    pub mul: BTreeMap<String, Vec<String>>,
    pub one: String,
    #[serde(default)]
    pub commutative: bool,
    #[serde(default)]
    pub unit_section: Option<SectionChoice>,
}

/// A loaded structure: the ring plus the requested unit-section check.
#[derive(Clone, Debug)]
pub struct Structure {
    pub name: String,
    pub ring: TableRing,
    dim_names: Vec<String>,
    section: Option<SectionChoice>,
}

impl StructureFile {
    pub fn from_json(src: &str) -> Result<Self, InputError> {
        serde_json::from_str(src).map_err(InputError::json)
    }

    pub fn build(self) -> Result<Structure, InputError> {
        let (monoid, dim_names) = match &self.monoid {
            MonoidSpec::Cyclic { cyclic } => {
                if *cyclic == 0 {
                    return Err(InputError::shape("a cyclic monoid needs a positive order"));
                }
                (DimMonoid::cyclic(*cyclic), (0..*cyclic).map(|i| i.to_string()).collect::<Vec<_>>())
            }
            MonoidSpec::Table { elements, identity, table } => {
                let idx = |s: &String| {
                    elements.iter().position(|e| e == s).ok_or_else(|| InputError::shape(format!("undeclared dimension `{s}` in the monoid table")))
                };
                let rows = table
                    .iter()
                    .map(|row| row.iter().map(idx).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                let m = DimMonoid::table(elements.clone(), rows, idx(identity)?).map_err(|e| InputError::shape(e.to_string()))?;
                (m, elements.clone())
            }
        };
        let dim_of = |s: &str| -> Result<Dim, InputError> {
            dim_names
                .iter()
                .position(|d| d == s)
                .map(|i| Dim::scalar(i as i64))
                .ok_or_else(|| InputError::shape(format!("undeclared dimension `{s}`")))
        };
        for key in self.slices.keys().chain(self.add.keys()) {
            dim_of(key)?;
        }
        let mut names: Vec<String> = Vec::new();
        let mut dims = Vec::new();
        for d in &dim_names {
            let slice = self.slices.get(d).ok_or_else(|| InputError::shape(format!("no slice listed for dimension `{d}`")))?;
            if slice.is_empty() {
                return Err(InputError::shape(format!("slice `{d}` is empty")));
            }
            for e in slice {
                if names.contains(e) {
                    return Err(InputError::shape(format!("element `{e}` listed twice")));
                }
                names.push(e.clone());
                dims.push(dim_of(d)?);
            }
        }
        let n = names.len();
        let find = |s: &str| names.iter().position(|e| e == s).ok_or_else(|| InputError::shape(format!("unknown element `{s}`")));
        let mut add = vec![vec![None; n]; n];
        for (d, slice) in &self.slices {
            let table = self.add.get(d).ok_or_else(|| InputError::shape(format!("no addition table for slice `{d}`")))?;
            if table.len() != slice.len() || table.iter().any(|row| row.len() != slice.len()) {
                return Err(InputError::shape(format!("addition table for slice `{d}` is not {0}×{0}", slice.len())));
            }
            for (a, row) in slice.iter().zip(table) {
                for (b, c) in slice.iter().zip(row) {
                    add[find(a)?][find(b)?] = Some(find(c)?);
                }
            }
        }
        let mut mul = vec![Vec::new(); n];
        for (a, row) in &self.mul {
            if row.len() != n {
                return Err(InputError::shape(format!("multiplication row of `{a}` has {} entries, expected {n}", row.len())));
            }
            mul[find(a)?] = row.iter().map(|c| find(c)).collect::<Result<_, _>>()?;
        }
        if let Some(i) = mul.iter().position(Vec::is_empty) {
            return Err(InputError::shape(format!("no multiplication row for `{}`", names[i])));
        }
        if let Some(SectionChoice::Search(s)) = &self.unit_section {
            if s != "search" {
                return Err(InputError::shape(format!("unit_section must be \"search\" or an object, not \"{s}\"")));
            }
        }
        let one = find(&self.one)?;
        let ring = TableRing::new(monoid, names, dims, add, mul, one, self.commutative).map_err(|e| InputError::shape(e.to_string()))?;
        Ok(Structure { name: self.name.unwrap_or_else(|| "structure".into()), ring, dim_names, section: self.unit_section })
    }
}

impl Structure {
    pub fn load(src: &str) -> Result<Self, InputError> {
        StructureFile::from_json(src)?.build()
    }

    /// Every ring law exhaustively (or on probes for larger tables), then the
    /// unit section when one was asked for.
    pub fn check(&self) -> Result<Report, InputError> {
        let r = &self.ring;
        let mut report = ring_axiom_report(r, &self.name, &Plan::auto(r).instances(r));
        let outcome = match &self.section {
            None => return Ok(report),
            Some(SectionChoice::Search(_)) => find_unit_section(r).map(|_| ()),
            Some(SectionChoice::Candidate(map)) => {
                let mut table = Vec::new();
                for (d, e) in map {
                    let dim = self
                        .dim_names
                        .iter()
                        .position(|x| x == d)
                        .map(|i| Dim::scalar(i as i64))
                        .ok_or_else(|| InputError::shape(format!("undeclared dimension `{d}` in unit_section")))?;
                    let i = r.index(e).ok_or_else(|| InputError::shape(format!("unknown element `{e}` in unit_section")))?;
                    table.push((dim, i));
                }
                unit_section_check(r, SectionSpec::Table(table)).map(|_| ())
            }
        };
        let witness = outcome.err().map(|f| {
            // Section failures name dimensions by index; show the file's names.
            let mut s = f.to_string();
            for (i, name) in self.dim_names.iter().enumerate().rev() {
                s = s.replace(&format!("({i})"), &format!("({name})"));
            }
            s
        });
        report.push(LawResult { law: "unit section".into(), passed: witness.is_none(), checked: 1, witness });
        Ok(report)
    }
}
