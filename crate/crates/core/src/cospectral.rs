//! Cospectrality inside the class: equal-nonzero-spectrum classes, mate
//! generation with isolated-vertex padding, and the determined-by-spectrum
//! decision.
//!
//! The classes are generated from the catalog rules and then cross-validated
//! against exact nonzero characteristic polynomials in the test suites,
//! rather than discovered from the polynomials alone.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::families::{equivalent_labels, recognize, FamilyId, FamilyInstance};
use crate::graph::{Graph, GraphError};
use crate::linalg::{char_poly, CharPoly, IntMatrix};

/// The nonzero part of a spectrum, exactly: char_poly(A) / x^{mult of 0}.
/// Equal keys iff equal nonzero spectra with multiplicity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NonzeroSpectrumKey(CharPoly);

impl NonzeroSpectrumKey {
    pub fn poly(&self) -> &CharPoly {
        &self.0
    }
}

pub fn nonzero_key_of_poly(p: &CharPoly) -> NonzeroSpectrumKey {
    NonzeroSpectrumKey(p.divide_out_x(p.zero_root_multiplicity()))
}

pub fn nonzero_key(g: &Graph) -> NonzeroSpectrumKey {
    nonzero_key_of_poly(&char_poly(&IntMatrix::adjacency(g)))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CospectralError {
    #[error("graph is not in the class (more than two eigenvalues outside {{-2, 0}})")]
    NotInClass,
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
    #[error("member of the class not matched by any catalog instance: {0}")]
    NotInCatalog(String),
}

/// All catalog instances with the same nonzero spectrum as `f`, generated
/// from the catalog's cospectrality rules (merged transitively) plus the
/// dual labels CP(2) = G0(2,2) and CP(k) = G2(k,2). Sorted, includes `f`.
pub fn theorem6_class(f: &FamilyInstance) -> Vec<FamilyInstance> {
    let mut set: BTreeSet<FamilyInstance> = BTreeSet::new();
    let mut queue: Vec<FamilyInstance> = vec![f.clone()];
    while let Some(next) = queue.pop() {
        if !set.insert(next.clone()) {
            continue;
        }
        for label in equivalent_labels(&next) {
            queue.push(label);
        }
        for rule_set in rules_containing(&next) {
            queue.extend(rule_set);
        }
    }
    set.into_iter().collect()
}

/// The seven equal-nonzero-spectrum rules, as the full member list of every
/// rule containing `f`.
fn rules_containing(f: &FamilyInstance) -> Vec<Vec<FamilyInstance>> {
    let inst = |id: FamilyId, params: &[u32]| FamilyInstance::new(id, params);
    let mut out = Vec::new();

    // complete bipartite graphs with equal products
    if let (FamilyId::G0, [l, m]) = (f.id, f.params.as_slice()) {
        let product = u64::from(*l) * u64::from(*m);
        let mut members = Vec::new();
        for d in 1..=product.isqrt() {
            if product % d == 0 {
                // l' = product/d >= m' = d; instances past 64 vertices
                // cannot be built and are skipped
                if let Ok(i) = inst(FamilyId::G0, &[(product / d) as u32, d as u32]) {
                    members.push(i);
                }
            }
        }
        out.push(members);
    }

    // {G4(k), G5(k,2)} for k >= 2
    let pair_k = |k: u32| -> Vec<FamilyInstance> {
        [inst(FamilyId::G4, &[k]), inst(FamilyId::G5, &[k, 2])]
            .into_iter()
            .flatten()
            .collect()
    };
    match (f.id, f.params.as_slice()) {
        (FamilyId::G4, [k]) => out.push(pair_k(*k)),
        (FamilyId::G5, [k, 2]) => out.push(pair_k(*k)),
        _ => {}
    }

    // {G5(k+1,k), G6(2k), G8(k,k)} for k >= 2
    let triple_k = |k: u32| -> Vec<FamilyInstance> {
        [
            inst(FamilyId::G5, &[k + 1, k]),
            inst(FamilyId::G6, &[2 * k]),
            inst(FamilyId::G8, &[k, k]),
        ]
        .into_iter()
        .flatten()
        .collect()
    };
    match (f.id, f.params.as_slice()) {
        (FamilyId::G5, [k1, k]) if *k >= 2 && *k1 == k + 1 => out.push(triple_k(*k)),
        (FamilyId::G6, [m]) if m % 2 == 0 && *m >= 4 => out.push(triple_k(m / 2)),
        (FamilyId::G8, [k, l]) if k == l && *k >= 2 => out.push(triple_k(*k)),
        _ => {}
    }

    // the fixed coincidences
    let fixed: [&[(FamilyId, &[u32])]; 4] = [
        &[(FamilyId::G6, &[3]), (FamilyId::G12, &[])],
        &[
            (FamilyId::G4, &[4]),
            (FamilyId::G5, &[4, 2]),
            (FamilyId::G9, &[1]),
        ],
        &[
            (FamilyId::G4, &[3]),
            (FamilyId::G5, &[3, 2]),
            (FamilyId::G6, &[4]),
            (FamilyId::G8, &[2, 2]),
            (FamilyId::G11, &[]),
        ],
        &[
            (FamilyId::G3, &[]),
            (FamilyId::G4, &[2]),
            (FamilyId::G5, &[2, 2]),
        ],
    ];
    for rule in fixed {
        if rule
            .iter()
            .any(|(id, params)| f.id == *id && f.params == *params)
        {
            out.push(
                rule.iter()
                    .map(|(id, params)| inst(*id, params).expect("fixed rules are valid"))
                    .collect(),
            );
        }
    }
    out
}

/// One cospectral mate: a catalog core padded with isolated vertices,
/// carrying every catalog label that builds the same graph.
#[derive(Clone, Debug, Serialize)]
pub struct Mate {
    pub graph6: String,
    /// (instance, number of padding isolated vertices) for each label
    pub labels: Vec<(FamilyInstance, usize)>,
    #[serde(skip)]
    pub graph: Graph,
}

impl Mate {
    pub fn description(&self) -> String {
        let (inst, padding) = &self.labels[0];
        if *padding == 0 {
            inst.to_string()
        } else {
            format!("{inst} + {padding}K1")
        }
    }
}

/// All non-isomorphic graphs in the class with exactly the same full
/// spectrum as `g`: class members of the stripped core, padded with isolated
/// vertices back to g's order. Requires g in the class and n <= 16.
pub fn cospectral_mates(g: &Graph) -> Result<Vec<Mate>, CospectralError> {
    if g.n() > 16 {
        return Err(GraphError::SizeBound {
            limit: 16,
            n: g.n(),
        }
        .into());
    }
    if IntMatrix::e_matrix(g).rank() > 2 {
        return Err(CospectralError::NotInClass);
    }
    let core = g.strip_isolated();
    if core.n() == 0 {
        // an all-zero spectrum forces the edgeless graph
        return Ok(Vec::new());
    }
    let labels = recognize(&core)?;
    let seed = labels
        .first()
        .ok_or_else(|| CospectralError::NotInCatalog(core.to_graph6()))?;
    let class = theorem6_class(seed);
    let own_cert = g.canonical_form()?;
    let mut mates: Vec<Mate> = Vec::new();
    for member in class {
        if member.vertex_count() > g.n() {
            continue;
        }
        let padding = g.n() - member.vertex_count();
        let padded = member.construct().disjoint_union(&Graph::empty(padding)?)?;
        let cert = padded.canonical_form()?;
        if cert == own_cert {
            continue;
        }
        match mates.iter_mut().find(|m| m.graph6 == cert.as_str()) {
            Some(mate) => mate.labels.push((member, padding)),
            None => mates.push(Mate {
                graph6: cert.as_str().to_string(),
                labels: vec![(member, padding)],
                graph: cert.graph(),
            }),
        }
    }
    mates.sort_by(|a, b| a.graph6.cmp(&b.graph6));
    Ok(mates)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum DsReason {
    #[serde(rename = "unique-in-class")]
    UniqueInClass,
    #[serde(rename = "bipartite-divisor")]
    BipartiteDivisor,
    #[serde(rename = "theorem6-class")]
    Theorem6Class,
}

/// Determined-by-spectrum verdict: no non-isomorphic graph shares the full
/// adjacency spectrum.
#[derive(Clone, Debug, Serialize)]
pub struct DsVerdict {
    pub is_ds: bool,
    pub reason: DsReason,
    pub mates: Vec<Mate>,
}

/// DS decision for a class member. Inputs with isolated vertices are decided
/// through the stripped core plus padding, like the mates.
pub fn is_ds(g: &Graph) -> Result<DsVerdict, CospectralError> {
    let mates = cospectral_mates(g)?;
    let reason = if mates.is_empty() {
        DsReason::UniqueInClass
    } else {
        let core = g.strip_isolated();
        let bipartite_core = recognize(&core)?.iter().any(|f| f.id == FamilyId::G0);
        if bipartite_core {
            DsReason::BipartiteDivisor
        } else {
            DsReason::Theorem6Class
        }
    };
    Ok(DsVerdict {
        is_ds: mates.is_empty(),
        reason,
        mates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(id: FamilyId, params: &[u32]) -> FamilyInstance {
        FamilyInstance::new(id, params).unwrap()
    }

    fn names(class: &[FamilyInstance]) -> Vec<String> {
        class.iter().map(|f| f.to_string()).collect()
    }

    #[test]
    fn nonzero_keys() {
        let k41 = Graph::complete_bipartite(4, 1).unwrap();
        let k22 = Graph::complete_bipartite(2, 2).unwrap();
        assert_eq!(nonzero_key(&k41), nonzero_key(&k22));

        let g63 = inst(FamilyId::G6, &[3]).construct();
        let g12 = inst(FamilyId::G12, &[]).construct();
        assert_eq!(nonzero_key(&g63), nonzero_key(&g12));

        let k3 = Graph::complete(3).unwrap();
        let p3 = Graph::path(3).unwrap();
        assert_ne!(nonzero_key(&k3), nonzero_key(&p3));
    }

    #[test]
    fn classes_from_rules() {
        assert_eq!(
            names(&theorem6_class(&inst(FamilyId::G8, &[2, 2]))),
            vec!["G4(3)", "G5(3,2)", "G6(4)", "G8(2,2)", "G11"]
        );
        assert_eq!(
            names(&theorem6_class(&inst(FamilyId::G5, &[3, 2]))),
            vec!["G4(3)", "G5(3,2)", "G6(4)", "G8(2,2)", "G11"]
        );
        assert_eq!(names(&theorem6_class(&inst(FamilyId::G7, &[]))), vec!["G7"]);
        assert_eq!(
            names(&theorem6_class(&inst(FamilyId::G3, &[]))),
            vec!["G3", "G4(2)", "G5(2,2)"]
        );
        assert_eq!(
            names(&theorem6_class(&inst(FamilyId::G9, &[1]))),
            vec!["G4(4)", "G5(4,2)", "G9(1)"]
        );
        // the bipartite product rule, including the dual CP(2) label
        assert_eq!(
            names(&theorem6_class(&inst(FamilyId::G0, &[2, 2]))),
            vec!["G0(2,2)", "G0(4,1)", "CP(2)"]
        );
        // dual labels only: CP(k) = G2(k,2)
        assert_eq!(
            names(&theorem6_class(&inst(FamilyId::Cp, &[3]))),
            vec!["G2(3,2)", "CP(3)"]
        );
    }

    #[test]
    fn class_members_share_keys() {
        for f in [
            inst(FamilyId::G8, &[2, 2]),
            inst(FamilyId::G3, &[]),
            inst(FamilyId::G9, &[1]),
            inst(FamilyId::G0, &[6, 1]),
        ] {
            let class = theorem6_class(&f);
            let key = nonzero_key(&f.construct());
            for member in &class {
                assert_eq!(
                    nonzero_key(&member.construct()),
                    key,
                    "key mismatch inside class of {f}: {member}"
                );
            }
        }
    }

    #[test]
    fn mates_of_k41() {
        let k41 = Graph::complete_bipartite(4, 1).unwrap();
        let mates = cospectral_mates(&k41).unwrap();
        assert_eq!(mates.len(), 1);
        let c4_plus_k1 = Graph::cycle(4)
            .unwrap()
            .disjoint_union(&Graph::empty(1).unwrap())
            .unwrap();
        assert!(mates[0].graph.isomorphic(&c4_plus_k1).unwrap());
    }

    #[test]
    fn mates_of_g8_22() {
        let g = inst(FamilyId::G8, &[2, 2]).construct();
        let mates = cospectral_mates(&g).unwrap();
        let descs: Vec<String> = mates.iter().map(|m| m.description()).collect();
        // G4(3) and G5(3,2) have more than 9 vertices and are excluded;
        // G6(4) needs one isolated vertex
        assert_eq!(mates.len(), 2);
        assert!(descs.contains(&"G11".to_string()));
        assert!(descs.contains(&"G6(4) + 1K1".to_string()));
    }

    #[test]
    fn cp3_plus_k1_is_ds() {
        let g = inst(FamilyId::Cp, &[3])
            .construct()
            .disjoint_union(&Graph::empty(1).unwrap())
            .unwrap();
        assert!(cospectral_mates(&g).unwrap().is_empty());
        let v = is_ds(&g).unwrap();
        assert!(v.is_ds);
        assert_eq!(v.reason, DsReason::UniqueInClass);
    }

    #[test]
    fn ds_verdicts() {
        // 9 = 3*3 has no divisor strictly between 3 and 3
        let k33 = Graph::complete_bipartite(3, 3).unwrap();
        assert!(is_ds(&k33).unwrap().is_ds);

        let g11 = inst(FamilyId::G11, &[]).construct();
        let v = is_ds(&g11).unwrap();
        assert!(!v.is_ds);
        assert_eq!(v.reason, DsReason::Theorem6Class);

        let g7 = inst(FamilyId::G7, &[]).construct();
        assert!(is_ds(&g7).unwrap().is_ds);

        let k41 = Graph::complete_bipartite(4, 1).unwrap();
        let v = is_ds(&k41).unwrap();
        assert!(!v.is_ds);
        assert_eq!(v.reason, DsReason::BipartiteDivisor);
    }

    #[test]
    fn rejects_non_members() {
        assert!(matches!(
            cospectral_mates(&Graph::cycle(5).unwrap()),
            Err(CospectralError::NotInClass)
        ));
        assert!(is_ds(&Graph::cycle(5).unwrap()).is_err());
    }

    #[test]
    fn edgeless_graphs_have_no_mates() {
        let g = Graph::empty(6).unwrap();
        assert!(cospectral_mates(&g).unwrap().is_empty());
    }
}
