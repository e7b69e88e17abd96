//! Certificates: portable evidence for decided relations.
//!
//! Every certificate carries enough data to be re-verified from
//! scratch, independently of whichever procedure produced it. The
//! verification entry points live in [`crate::lattice`] (classification
//! and the no-reduction evidence) and [`crate::lattice::rel`] (the
//! reduction witnesses); this module only defines the shapes and their
//! wire forms.

use crate::family::Member;
use crate::nat::Nat;
use crate::sight::Sight;
use serde::{Deserialize, Serialize};

/// How the n-intersection side of a [`Certificate::NotLeqNip`] claim
/// was established.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NipEvidence {
    /// Closed-form: the target's intersection depth is known
    /// symbolically (ceiling formula, cofinal kinds, join minimum).
    Analytic,
    /// Checked by enumerating every n-tuple of members drawn from the
    /// stated window.
    BruteForce { window: u64 },
}

/// Classification of a family against the two lattice endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ClassKind {
    /// All members share an element: equivalent to the identity.
    Id { common: Nat },
    /// The empty set is a member: equivalent to the top operator.
    Trivial,
    /// Strictly between; the identity realizer witnesses that the
    /// least nontrivial operator reduces to this one. Families with
    /// two disjoint finite members additionally lie above ¬¬.
    Between {
        identity_realizer: Nat,
        notnot_below: bool,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        disjoint_pair: Option<(Member, Member)>,
    },
}

/// One source member together with its dedicated sight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SightFor {
    pub member: Member,
    pub sight: Sight,
}

/// A per-index witness block: the value the uniformizing function
/// takes at `n`, and one dedicated sight per member of the source
/// family at `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedEntry {
    pub n: Nat,
    pub z: Nat,
    pub sights: Vec<SightFor>,
}

/// Positive evidence for a ≤_L claim: the witness number(s) plus a
/// dedicated sight for every source member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum LeqWitness {
    /// Single-family source: one z works for every member.
    Uniform { z: Nat, sights: Vec<SightFor> },
    /// Indexed source: one block per index of the source assignment.
    Indexed { entries: Vec<IndexedEntry> },
}

/// Positive evidence for a ≤_M claim: the mapping realizer, checked
/// member-against-member with the stated budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MWitness {
    pub k: Nat,
    pub budget: u64,
    pub window: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum Certificate {
    /// `source ≤_L target-assignment`, via dedicated sights.
    Leq {
        witness: LeqWitness,
        /// Step budget the sights were checked under.
        budget: u64,
    },
    /// `source ≰_L target`: the source holds an empty n-tuple while
    /// the target has the n-intersection property.
    #[serde(rename = "notleq_nip")]
    NotLeqNip {
        n: u64,
        tuple: Vec<Member>,
        nip_evidence: NipEvidence,
    },
    /// Position of a single family in the lattice.
    Class(ClassKind),
    /// `source ≤_M target`, via a member-to-member realizer.
    #[serde(rename = "mleq")]
    MLeq(MWitness),
}

impl Certificate {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Certificate::Leq { .. } => "leq",
            Certificate::NotLeqNip { .. } => "notleq_nip",
            Certificate::Class(_) => "class",
            Certificate::MLeq(_) => "mleq",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::SetExpr;

    #[test]
    fn certificates_roundtrip_through_json() {
        let certs = vec![
            Certificate::NotLeqNip {
                n: 3,
                tuple: vec![
                    Member::set(SetExpr::finite([Nat::from(1u64)])),
                    Member::set(SetExpr::finite([Nat::from(2u64)])),
                    Member::set(SetExpr::finite([Nat::from(3u64)])),
                ],
                nip_evidence: NipEvidence::Analytic,
            },
            Certificate::Class(ClassKind::Id {
                common: Nat::from(4u64),
            }),
            Certificate::Class(ClassKind::Between {
                identity_realizer: Nat::from(9u64),
                notnot_below: false,
                disjoint_pair: None,
            }),
            Certificate::Leq {
                witness: LeqWitness::Uniform {
                    z: Nat::from(12u64),
                    sights: vec![SightFor {
                        member: Member::set(SetExpr::finite([Nat::ZERO])),
                        sight: Sight::Nil,
                    }],
                },
                budget: 100_000,
            },
            Certificate::MLeq(MWitness {
                k: Nat::from(2u64),
                budget: 1_000,
                window: 8,
            }),
        ];
        for c in certs {
            let j = serde_json::to_string(&c).unwrap();
            let back: Certificate = serde_json::from_str(&j).unwrap();
            assert_eq!(back, c, "{j}");
        }
    }

    #[test]
    fn wire_tags_are_stable() {
        let c = Certificate::Class(ClassKind::Trivial);
        let j = serde_json::to_value(&c).unwrap();
        assert_eq!(j["type"], "class");
        assert_eq!(j["kind"], "trivial");
        let c = Certificate::NotLeqNip {
            n: 2,
            tuple: vec![],
            nip_evidence: NipEvidence::BruteForce { window: 6 },
        };
        let j = serde_json::to_value(&c).unwrap();
        assert_eq!(j["type"], "notleq_nip");
        assert_eq!(j["nip_evidence"]["brute_force"]["window"], 6);
    }
}
