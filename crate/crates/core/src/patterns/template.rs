use std::collections::HashSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{Certificate, ConsistencyInterface, Report, SetSystem, Violation, ViolationKind};
use crate::error::{Error, Result};

/// An abstract list of families that must be consistent and families that
/// must be k-inconsistent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Template {
    pub indices: Vec<String>,
    #[serde(default)]
    pub must_consist: Vec<Vec<String>>,
    #[serde(default)]
    pub must_k_inconsist: Vec<Vec<String>>,
    pub k: usize,
}

impl Template {
    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::arg(format!("k must be at least 2, got {}", self.k)));
        }
        let known: HashSet<&String> = self.indices.iter().collect();
        if known.len() != self.indices.len() {
            return Err(Error::arg("template indices are not distinct"));
        }
        for set in self.must_consist.iter().chain(&self.must_k_inconsist) {
            if let Some(stray) = set.iter().find(|i| !known.contains(i)) {
                return Err(Error::arg(format!("{stray:?} is not a template index")));
            }
        }
        Ok(())
    }

    /// A k-subset of a required-inconsistent family inside a required-consistent
    /// one, as `(consistent position, inconsistent position, subset)`.
    pub fn conflict(&self) -> Option<(usize, usize, Vec<String>)> {
        for (ci, c) in self.must_consist.iter().enumerate() {
            let c: HashSet<&String> = c.iter().collect();
            for (ii, inc) in self.must_k_inconsist.iter().enumerate() {
                let shared: Vec<String> = inc.iter().filter(|i| c.contains(i)).unique().cloned().collect();
                if shared.len() >= self.k {
                    return Some((ci, ii, shared[..self.k].to_vec()));
                }
            }
        }
        None
    }

    /// Checks `ci` against every requirement of the template.
    pub fn check(&self, ci: &ConsistencyInterface<String>, max_violations: usize) -> Result<Report> {
        self.validate()?;
        let mut violations = Vec::new();
        let mut total = 0;
        let mut checked = 0u64;
        for (pos, set) in self.must_consist.iter().enumerate() {
            checked += 1;
            if !ci.consistent(set)? {
                total += 1;
                violations.push(Violation {
                    kind: ViolationKind::Consistency,
                    indices: set.clone(),
                    certificate: Certificate::MustConsist(pos),
                    common_atom: None,
                });
            }
        }
        for (pos, set) in self.must_k_inconsist.iter().enumerate() {
            let set: Vec<String> = set.iter().unique().cloned().collect();
            for sub in set.iter().cloned().combinations(self.k) {
                checked += 1;
                let fam = ci.positions(&sub)?;
                if ci.consistent_positions(&fam) {
                    total += 1;
                    let common_atom = ci
                        .as_sets()
                        .and_then(|s| s.first_common_atom(&fam).map(|a| s.universe()[a].clone()));
                    violations.push(Violation {
                        kind: ViolationKind::Inconsistency,
                        indices: sub,
                        certificate: Certificate::MustKInconsist(pos),
                        common_atom,
                    });
                }
            }
        }
        violations.truncate(max_violations);
        Ok(Report::from_parts(None, violations, total, checked))
    }
}

/// A set system realizing `t`, or `None` when some k-subset of a
/// required-inconsistent family sits inside a required-consistent family.
///
/// The witness has one atom per required-consistent family, and `b_i` is the
/// set of those families containing `i`.
pub fn realizable(t: &Template) -> Result<Option<SetSystem<String>>> {
    t.validate()?;
    if t.conflict().is_some() {
        return Ok(None);
    }
    let universe = (0..t.must_consist.len()).map(|c| format!("c{c}")).collect();
    let family = t
        .indices
        .iter()
        .map(|i| {
            let atoms = t
                .must_consist
                .iter()
                .positions(|c| c.contains(i))
                .collect();
            (i.clone(), atoms)
        })
        .collect();
    let ss = SetSystem::from_positions(universe, family)?;
    let report = t.check(&ss.clone().into(), 1)?;
    assert!(report.ok, "canonical template witness fails its template: {report:?}");
    Ok(Some(ss))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn direct_conflict() {
        let t = Template {
            indices: s(&["a", "b", "c"]),
            must_consist: vec![s(&["a", "b", "c"])],
            must_k_inconsist: vec![s(&["a", "b"])],
            k: 2,
        };
        assert!(realizable(&t).unwrap().is_none());
        assert_eq!(t.conflict(), Some((0, 0, s(&["a", "b"]))));
    }

    #[test]
    fn empty_template() {
        let t = Template {
            indices: s(&["a", "b"]),
            must_consist: vec![],
            must_k_inconsist: vec![],
            k: 2,
        };
        let ss = realizable(&t).unwrap().unwrap();
        assert!(ss.universe().is_empty());
        assert!(t.check(&ss.into(), 10).unwrap().ok);
    }

    #[test]
    fn witness_realizes() {
        let t = Template {
            indices: s(&["a", "b", "c", "d"]),
            must_consist: vec![s(&["a", "b"]), s(&["b", "c"]), s(&["c", "d"])],
            must_k_inconsist: vec![s(&["a", "b", "c", "d"])],
            k: 3,
        };
        let ss = realizable(&t).unwrap().unwrap();
        let ci: ConsistencyInterface<String> = ss.into();
        assert!(ci.k_inconsistent(&s(&["a", "b", "c", "d"]), 3).unwrap());
        assert!(!ci.k_inconsistent(&s(&["a", "b", "c", "d"]), 2).unwrap());
    }

    #[test]
    fn malformed() {
        let t = Template {
            indices: s(&["a"]),
            must_consist: vec![s(&["z"])],
            must_k_inconsist: vec![],
            k: 2,
        };
        assert!(realizable(&t).is_err());
    }
}
