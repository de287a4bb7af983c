//! The action of the involution `[-1]Q + P` on singular-fiber components,
//! the singularities it induces on the branch quartic, and the resulting
//! dictionary between fibers and pencil lines.

use crate::elliptic::FiberType;
use crate::error::{Error, Result};
use std::fmt;

/// The permutation of all components of a fiber, in dual-graph order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPermutation {
    pub fiber_type: FiberType,
    pub met: String,
    /// `(component, image)` for every component.
    pub map: Vec<(String, String)>,
}

impl ComponentPermutation {
    pub fn image(&self, label: &str) -> Option<&str> {
        self.map.iter().find(|(a, _)| a == label).map(|(_, b)| b.as_str())
    }

    pub fn is_bijection(&self) -> bool {
        let mut imgs: Vec<&String> = self.map.iter().map(|(_, b)| b).collect();
        let mut srcs: Vec<&String> = self.map.iter().map(|(a, _)| a).collect();
        imgs.sort();
        srcs.sort();
        imgs == srcs
    }

    pub fn is_involution(&self) -> bool {
        self.map.iter().all(|(a, b)| self.image(b) == Some(a.as_str()))
    }

    /// Components mapped to themselves (not necessarily pointwise).
    pub fn fixed(&self) -> Vec<&str> {
        self.map.iter().filter(|(a, b)| a == b).map(|(a, _)| a.as_str()).collect()
    }

    /// Preserves intersection numbers and multiplicities of the dual graph.
    pub fn is_graph_automorphism(&self) -> bool {
        let g = self.fiber_type.dual_graph();
        let idx = |l: &str| g.index(l);
        let perm: Option<Vec<usize>> = g.labels.iter().map(|l| self.image(l).and_then(idx)).collect();
        let Some(perm) = perm else {
            return false;
        };
        let n = g.labels.len();
        (0..n).all(|i| {
            g.multiplicities[i] == g.multiplicities[perm[i]]
                && (0..n).all(|j| g.intersection(i, j) == g.intersection(perm[i], perm[j]))
        })
    }
}

impl fmt::Display for ComponentPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        write!(f, "{} met at {}: {}", self.fiber_type, self.met, parts.join(" "))
    }
}

fn unsupported(ft: FiberType, met: &str) -> Error {
    Error::UnsupportedRow(format!("{ft} with the section meeting component {met}"))
}

fn labels(ft: FiberType) -> Vec<String> {
    ft.dual_graph().labels
}

/// Builds the permutation from explicit swaps; everything else is fixed.
fn from_swaps(ft: FiberType, met: &str, swaps: &[(&str, &str)]) -> ComponentPermutation {
    let map = labels(ft)
        .into_iter()
        .map(|l| {
            let img = swaps
                .iter()
                .find_map(|(a, b)| {
                    if *a == l {
                        Some(b.to_string())
                    } else if *b == l {
                        Some(a.to_string())
                    } else {
                        None
                    }
                })
                .unwrap_or_else(|| l.clone());
            (l, img)
        })
        .collect();
    ComponentPermutation { fiber_type: ft, met: met.to_string(), map }
}

/// Row of the sigma table for `ft` when the section meets component `met`.
///
/// The IV* rows are encoded with the arms `0-3-6`, `1-4-6`, `2-5-6`; under
/// that labeling each row swaps two arms and fixes the third.
pub fn sigma_action(ft: FiberType, met: &str) -> Result<ComponentPermutation> {
    let bad = || unsupported(ft, met);
    if ft.index_of_label(met).is_none() {
        return Err(bad());
    }
    Ok(match ft {
        FiberType::I(b) if b >= 2 => {
            let l: u32 = met.parse().map_err(|_| bad())?;
            let map = (0..b).map(|k| (k.to_string(), ((2 * b - k + l) % b).to_string())).collect();
            ComponentPermutation { fiber_type: ft, met: met.to_string(), map }
        }
        FiberType::IStar(b) => {
            let mut swaps: Vec<(&str, &str)> = match (b % 2 == 0, met) {
                (true, "0") | (false, "0") => vec![],
                (true, "10") => vec![("0", "10"), ("01", "11")],
                (true, "01") => vec![("0", "01"), ("10", "11")],
                (true, "11") => vec![("0", "11"), ("10", "01")],
                (false, "1") => vec![("0", "1"), ("2", "3")],
                (false, "2") => vec![("0", "2"), ("1", "3")],
                (false, "3") => vec![("0", "3"), ("1", "2")],
                _ => return Err(bad()),
            };
            // rows meeting a far component reverse the chain c4..c(b+4)
            let chain: Vec<(String, String)> = if matches!((b % 2, met), (0, "01" | "11") | (1, "1" | "3")) {
                (4..=b + 4).filter(|k| 2 * k < b + 8).map(|k| (format!("c{k}"), format!("c{}", b + 8 - k))).collect()
            } else {
                vec![]
            };
            swaps.extend(chain.iter().map(|(a, c)| (a.as_str(), c.as_str())));
            from_swaps(ft, met, &swaps)
        }
        FiberType::IIStar => from_swaps(ft, met, &[]),
        FiberType::III => match met {
            "0" => from_swaps(ft, met, &[]),
            _ => from_swaps(ft, met, &[("0", "1")]),
        },
        FiberType::IIIStar => match met {
            "0" => from_swaps(ft, met, &[]),
            _ => from_swaps(ft, met, &[("0", "1"), ("2", "7"), ("3", "6")]),
        },
        FiberType::IV => match met {
            "0" => from_swaps(ft, met, &[("1", "2")]),
            "1" => from_swaps(ft, met, &[("0", "1")]),
            _ => from_swaps(ft, met, &[("0", "2")]),
        },
        FiberType::IVStar => match met {
            "0" => from_swaps(ft, met, &[("1", "2"), ("4", "5")]),
            "1" => from_swaps(ft, met, &[("0", "1"), ("3", "4")]),
            _ => from_swaps(ft, met, &[("0", "2"), ("3", "5")]),
        },
        _ => return Err(bad()),
    })
}

/// Singularity of the branch quartic. `A(-1)` marks two transversal
/// intersections with the fiber image and `A(0)` a tangency at a smooth
/// point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Singularity {
    A(i32),
    D(u32),
    E(u32),
}

impl fmt::Display for Singularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Singularity::A(n) => write!(f, "A{n}"),
            Singularity::D(n) => write!(f, "D{n}"),
            Singularity::E(n) => write!(f, "E{n}"),
        }
    }
}

/// How the image of the fiber meets the branch quartic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// Fully described by the singularity list.
    Unstated,
    /// Tangent at a smooth point with the given multiplicity.
    Tangent(u32),
    /// Tangent to one branch of the singular point with the given
    /// multiplicity.
    BranchTangent(u32),
    ContainedInTangentCone,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchSingularityRecord {
    /// Empty when the quartic is smooth along the fiber image.
    pub singularities: Vec<Singularity>,
    pub relation: Relation,
}

impl BranchSingularityRecord {
    fn new(singularities: Vec<Singularity>, relation: Relation) -> Self {
        BranchSingularityRecord { singularities, relation }
    }

    /// Sum of the `A` indices, for `I_b` rows.
    pub fn a_index_sum(&self) -> i32 {
        self.singularities
            .iter()
            .map(|s| match s {
                Singularity::A(n) => *n,
                _ => 0,
            })
            .sum()
    }
}

impl fmt::Display for BranchSingularityRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.singularities.is_empty() {
            write!(f, "smooth")?;
        } else {
            let s: Vec<String> = self.singularities.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", s.join(" + "))?;
        }
        match self.relation {
            Relation::Unstated => Ok(()),
            Relation::Tangent(m) => write!(f, ", tangent with multiplicity {m}"),
            Relation::BranchTangent(m) => write!(f, ", tangent to a branch with multiplicity {m}"),
            Relation::ContainedInTangentCone => write!(f, ", fiber in tangent cone"),
        }
    }
}

/// Row of the branch-singularity table.
///
/// For `I_b` with `b` odd the met component is `l` or `b - l` and the row is
/// read with `l' = min(l, b - l)`.
pub fn branch_singularity(ft: FiberType, met: &str) -> Result<BranchSingularityRecord> {
    use Singularity::*;
    let bad = || unsupported(ft, met);
    if ft.index_of_label(met).is_none() {
        return Err(bad());
    }
    let rec = BranchSingularityRecord::new;
    Ok(match ft {
        FiberType::I(b) if b >= 2 => {
            let l: i32 = met.parse().map_err(|_| bad())?;
            let b = b as i32;
            let n = b / 2;
            if b % 2 == 0 {
                let lp = l / 2;
                if l % 2 == 0 {
                    rec(vec![A(2 * lp - 1), A(2 * (n - lp) - 1)], Relation::Unstated)
                } else {
                    rec(vec![A(2 * lp), A(2 * (n - lp) - 2)], Relation::Unstated)
                }
            } else {
                let lp = l.min(b - l);
                rec(vec![A(2 * lp - 1), A(2 * (n - lp))], Relation::Unstated)
            }
        }
        FiberType::IStar(b) => {
            let n = b / 2;
            let near = if b % 2 == 0 { ["0", "10"] } else { ["0", "2"] };
            if near.contains(&met) {
                rec(vec![D(b + 4)], Relation::Unstated)
            } else if b % 2 == 0 {
                rec(vec![A(2 * n as i32 + 3)], Relation::ContainedInTangentCone)
            } else {
                rec(vec![A(2 * n as i32 + 4)], Relation::ContainedInTangentCone)
            }
        }
        FiberType::IIStar => rec(vec![E(8)], Relation::Unstated),
        FiberType::III => match met {
            "0" => rec(vec![A(1)], Relation::BranchTangent(2)),
            _ => rec(vec![], Relation::Tangent(4)),
        },
        FiberType::IIIStar => match met {
            "0" => rec(vec![E(7)], Relation::Unstated),
            _ => rec(vec![E(6)], Relation::ContainedInTangentCone),
        },
        FiberType::IV => match met {
            "0" => rec(vec![A(2)], Relation::ContainedInTangentCone),
            _ => rec(vec![A(1)], Relation::BranchTangent(3)),
        },
        FiberType::IVStar => match met {
            "0" => rec(vec![E(6)], Relation::Unstated),
            _ => rec(vec![D(4)], Relation::ContainedInTangentCone),
        },
        _ => return Err(bad()),
    })
}

/// How a line of the pencil meets the branch quartic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LineClass {
    /// Four distinct smooth points.
    Transversal,
    SimpleTangent,
    OrdinaryBitangent,
    InflectionalTangent,
    /// Four-fold contact at one smooth point.
    SpecialBitangent,
    /// Through a node, meeting two other points.
    NodeSecant,
    /// Through a node and tangent elsewhere.
    NodePlusTangent,
    TwoNodeSecant,
    /// Through a node, tangent to one of its branches.
    NodeBranchTangent,
    /// Through a node, with an inflection on one of its branches.
    NodeBranchInflection,
}

impl LineClass {
    pub const ALL: [LineClass; 10] = [
        LineClass::Transversal,
        LineClass::SimpleTangent,
        LineClass::OrdinaryBitangent,
        LineClass::InflectionalTangent,
        LineClass::SpecialBitangent,
        LineClass::NodeSecant,
        LineClass::NodePlusTangent,
        LineClass::TwoNodeSecant,
        LineClass::NodeBranchTangent,
        LineClass::NodeBranchInflection,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LineClass::Transversal => "transversal",
            LineClass::SimpleTangent => "simple-tangent",
            LineClass::OrdinaryBitangent => "ordinary-bitangent",
            LineClass::InflectionalTangent => "inflectional-tangent",
            LineClass::SpecialBitangent => "special-bitangent",
            LineClass::NodeSecant => "node-secant",
            LineClass::NodePlusTangent => "node-plus-tangent",
            LineClass::TwoNodeSecant => "two-node-secant",
            LineClass::NodeBranchTangent => "node-branch-tangent",
            LineClass::NodeBranchInflection => "node-branch-inflection",
        }
    }

    /// Number of nodes of the quartic on a line of this class.
    pub fn node_count(self) -> usize {
        match self {
            LineClass::NodeSecant
            | LineClass::NodePlusTangent
            | LineClass::NodeBranchTangent
            | LineClass::NodeBranchInflection => 1,
            LineClass::TwoNodeSecant => 2,
            _ => 0,
        }
    }
}

impl fmt::Display for LineClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for LineClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        LineClass::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Parse { offset: 0, message: format!("unknown line class `{s}`") })
    }
}

/// Line class read off the branch-singularity record: `A(1)` is a node,
/// `A(0)` a tangency, `A(-1)` two transversal points. `I_1` and `II`
/// fibers are irreducible and give a simple and an inflectional tangent.
pub fn predicted_line_class(ft: FiberType, index: usize, node_on_line: bool) -> Result<LineClass> {
    ft.check_index(index)?;
    let class = match ft {
        FiberType::I(1) => LineClass::SimpleTangent,
        FiberType::II => LineClass::InflectionalTangent,
        FiberType::I(2..=4) | FiberType::III | FiberType::IV => {
            let label = &ft.simple_labels()[index];
            let rec = branch_singularity(ft, label)?;
            let count = |n| rec.singularities.iter().filter(|s| **s == Singularity::A(n)).count();
            let others = rec.singularities.iter().any(|s| !matches!(s, Singularity::A(-1..=1)));
            if others {
                return Err(Error::Unclassifiable(format!(
                    "{ft} met at {label} gives {rec}, which is not a nodal configuration"
                )));
            }
            match (ft, count(1), count(0)) {
                (FiberType::III, 0, 0) => LineClass::SpecialBitangent,
                (FiberType::III, 1, _) => LineClass::NodeBranchTangent,
                (FiberType::IV, 1, _) => LineClass::NodeBranchInflection,
                (_, 0, 2) => LineClass::OrdinaryBitangent,
                (_, 1, 0) => LineClass::NodeSecant,
                (_, 1, 1) => LineClass::NodePlusTangent,
                (_, 2, 0) => LineClass::TwoNodeSecant,
                _ => return Err(Error::Unclassifiable(format!("{ft} met at {label} gives {rec}"))),
            }
        }
        _ => return Err(Error::UnsupportedRow(format!("no line dictionary entry for {ft}"))),
    };
    if node_on_line != (class.node_count() > 0) {
        return Err(Error::Inconsistent(format!(
            "{ft} at index {index} predicts {class}, but a node {} on the line",
            if node_on_line { "lies" } else { "does not lie" }
        )));
    }
    Ok(class)
}

/// Every `(type, label)` pair the sigma table covers, for types up to the
/// given `I_b` / `I*_b` size.
pub fn sigma_rows(max_b: u32) -> Vec<(FiberType, String)> {
    let mut types = vec![FiberType::IIStar, FiberType::III, FiberType::IIIStar, FiberType::IV, FiberType::IVStar];
    types.extend((2..=max_b).map(FiberType::I));
    types.extend((0..=max_b).map(FiberType::IStar));
    let mut rows = Vec::new();
    for ft in types {
        let allowed: Vec<String> = match ft {
            FiberType::IIStar => vec!["0".into()],
            _ => ft.simple_labels(),
        };
        rows.extend(allowed.into_iter().map(|l| (ft, l)));
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_examples() {
        let p = sigma_action(FiberType::I(4), "2").unwrap();
        assert_eq!(p.image("0"), Some("2"));
        assert_eq!(p.image("1"), Some("1"));
        assert_eq!(p.image("3"), Some("3"));
        assert!(sigma_action(FiberType::IIStar, "0").unwrap().fixed().len() == 9);
        let p = sigma_action(FiberType::III, "1").unwrap();
        assert_eq!((p.image("0"), p.image("1")), (Some("1"), Some("0")));
        let p = sigma_action(FiberType::IStar(2), "01").unwrap();
        assert_eq!(p.image("c4"), Some("c6"));
        assert_eq!(p.image("c5"), Some("c5"));
        assert!(sigma_action(FiberType::II, "0").is_err());
        assert!(sigma_action(FiberType::I(3), "3").is_err());
        assert!(sigma_action(FiberType::IStar(1), "10").is_err());
    }

    #[test]
    fn every_row_is_an_involutive_automorphism() {
        for (ft, l) in sigma_rows(9) {
            let p = sigma_action(ft, &l).unwrap();
            assert!(p.is_bijection() && p.is_involution(), "{p}");
            assert!(p.is_graph_automorphism(), "{p}");
            assert_eq!(p.image("0").and_then(|s| ft.index_of_label(s)), Some(ft.index_of_label(&l).unwrap()), "{p}");
        }
    }

    #[test]
    fn branch_examples() {
        use Singularity::*;
        assert_eq!(branch_singularity(FiberType::I(4), "0").unwrap().singularities, vec![A(-1), A(3)]);
        let r = branch_singularity(FiberType::III, "1").unwrap();
        assert_eq!((r.singularities.len(), r.relation), (0, Relation::Tangent(4)));
        let r = branch_singularity(FiberType::IVStar, "1").unwrap();
        assert_eq!((r.singularities, r.relation), (vec![D(4)], Relation::ContainedInTangentCone));
        for b in 2..12u32 {
            for l in 0..b {
                let r = branch_singularity(FiberType::I(b), &l.to_string()).unwrap();
                assert_eq!(r.a_index_sum(), b as i32 - 2, "I{b} at {l}");
            }
        }
    }

    #[test]
    fn line_dictionary() {
        assert_eq!(predicted_line_class(FiberType::I(2), 1, false).unwrap(), LineClass::OrdinaryBitangent);
        assert_eq!(predicted_line_class(FiberType::I(2), 0, true).unwrap(), LineClass::NodeSecant);
        assert_eq!(predicted_line_class(FiberType::I(4), 2, true).unwrap(), LineClass::TwoNodeSecant);
        assert_eq!(predicted_line_class(FiberType::III, 1, false).unwrap(), LineClass::SpecialBitangent);
        assert_eq!(predicted_line_class(FiberType::III, 0, true).unwrap(), LineClass::NodeBranchTangent);
        assert_eq!(predicted_line_class(FiberType::I(3), 1, true).unwrap(), LineClass::NodePlusTangent);
        assert_eq!(predicted_line_class(FiberType::IV, 2, true).unwrap(), LineClass::NodeBranchInflection);
        assert_eq!(predicted_line_class(FiberType::I(1), 0, false).unwrap(), LineClass::SimpleTangent);
        assert!(predicted_line_class(FiberType::I(2), 1, true).is_err());
        assert!(predicted_line_class(FiberType::I(4), 0, true).is_err());
        assert!(predicted_line_class(FiberType::IStar(0), 0, true).is_err());
    }
}
