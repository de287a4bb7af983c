//! Kodaira fiber types, their dual graphs and local height contributions.

use crate::algebra::{rat, Matrix};
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum FiberType {
    /// `I(0)` is the smooth fiber.
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IIStar,
    IIIStar,
    IVStar,
}

impl FiberType {
    pub fn euler_number(self) -> u32 {
        match self {
            FiberType::I(n) => n,
            FiberType::IStar(n) => n + 6,
            FiberType::II => 2,
            FiberType::III => 3,
            FiberType::IV => 4,
            FiberType::IIStar => 10,
            FiberType::IIIStar => 9,
            FiberType::IVStar => 8,
        }
    }

    /// Number of irreducible components.
    pub fn component_count(self) -> usize {
        match self {
            FiberType::I(0) | FiberType::I(1) => 1,
            FiberType::I(n) => n as usize,
            FiberType::IStar(n) => n as usize + 5,
            FiberType::II => 1,
            FiberType::III => 2,
            FiberType::IV => 3,
            FiberType::IIStar => 9,
            FiberType::IIIStar => 8,
            FiberType::IVStar => 7,
        }
    }

    /// Number of simple (multiplicity one) components, which is the order of
    /// the component group.
    pub fn simple_count(self) -> usize {
        match self {
            FiberType::I(0) | FiberType::I(1) => 1,
            FiberType::I(n) => n as usize,
            FiberType::IStar(_) => 4,
            FiberType::II | FiberType::IIStar => 1,
            FiberType::III | FiberType::IIIStar => 2,
            FiberType::IV | FiberType::IVStar => 3,
        }
    }

    pub fn is_reducible(self) -> bool {
        self.component_count() > 1
    }

    pub fn is_multiplicative(self) -> bool {
        matches!(self, FiberType::I(n) if n > 0)
    }

    /// Invariant factors of the component group.
    pub fn component_group(self) -> Vec<u32> {
        match self {
            FiberType::I(n) if n >= 2 => vec![n],
            FiberType::IStar(n) if n % 2 == 0 => vec![2, 2],
            FiberType::IStar(_) => vec![4],
            FiberType::III | FiberType::IIIStar => vec![2],
            FiberType::IV | FiberType::IVStar => vec![3],
            _ => vec![],
        }
    }

    /// Labels of the simple components, index order. Index 0 is the
    /// identity component. The multiplicity-two chain of `I*_b` is labeled
    /// `c4, ..., c(b+4)`.
    pub fn simple_labels(self) -> Vec<String> {
        match self {
            FiberType::IStar(n) if n % 2 == 0 => ["0", "10", "01", "11"].map(String::from).to_vec(),
            FiberType::IStar(_) => ["0", "2", "1", "3"].map(String::from).to_vec(),
            _ => (0..self.simple_count()).map(|k| k.to_string()).collect(),
        }
    }

    /// Component index of a simple component label.
    pub fn index_of_label(self, label: &str) -> Option<usize> {
        self.simple_labels().iter().position(|l| l == label)
    }

    pub fn dual_graph(self) -> DualGraph {
        DualGraph::of(self)
    }

    /// Closed-form local contribution at simple component `k`.
    pub fn closed_form_contribution(self, k: usize) -> Result<BigRational> {
        self.check_index(k)?;
        if k == 0 {
            return Ok(BigRational::zero());
        }
        Ok(match self {
            FiberType::I(n) => {
                let (n, k) = (n as i64, k as i64);
                rat(k * (n - k), n)
            }
            FiberType::IStar(n) => {
                if k == 1 {
                    rat(1, 1)
                } else {
                    rat(4 + n as i64, 4)
                }
            }
            FiberType::III => rat(1, 2),
            FiberType::IV => rat(2, 3),
            FiberType::IIIStar => rat(3, 2),
            FiberType::IVStar => rat(4, 3),
            FiberType::II | FiberType::IIStar => unreachable!(),
        })
    }

    /// Local contribution from the inverse of the negated intersection
    /// matrix of the components not meeting the zero section.
    pub fn contribution(self, k: usize) -> Result<BigRational> {
        self.check_index(k)?;
        if k == 0 {
            return Ok(BigRational::zero());
        }
        let g = self.dual_graph();
        let label = &self.simple_labels()[k];
        let others: Vec<usize> = (0..g.labels.len()).filter(|&i| g.labels[i] != "0").collect();
        let pos = others
            .iter()
            .position(|&i| &g.labels[i] == label)
            .expect("simple label in dual graph");
        let m = g.intersection_matrix();
        let rows = others
            .iter()
            .map(|&i| others.iter().map(|&j| -m.get(i, j).clone()).collect())
            .collect();
        let inv = Matrix::from_rows(rows).inverse().expect("negative definite");
        Ok(inv.get(pos, pos).clone())
    }

    pub fn check_index(self, k: usize) -> Result<()> {
        if k >= self.simple_count() {
            return Err(Error::InvalidComponent { fiber: self.to_string(), index: k });
        }
        Ok(())
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberType::I(n) => write!(f, "I{n}"),
            FiberType::IStar(n) => write!(f, "I*{n}"),
            FiberType::II => write!(f, "II"),
            FiberType::III => write!(f, "III"),
            FiberType::IV => write!(f, "IV"),
            FiberType::IIStar => write!(f, "II*"),
            FiberType::IIIStar => write!(f, "III*"),
            FiberType::IVStar => write!(f, "IV*"),
        }
    }
}

impl FromStr for FiberType {
    type Err = Error;

    /// Accepts `I2`, `I_2`, `I*1`, `I1*`, `I*_1`, `III*`, `IV` and so on.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { offset: 0, message: format!("unknown fiber type `{s}`") };
        let t: String = s.trim().chars().filter(|c| *c != '_' && *c != ' ').collect();
        let t = t.to_ascii_uppercase();
        let named = match t.as_str() {
            "II" => Some(FiberType::II),
            "III" => Some(FiberType::III),
            "IV" => Some(FiberType::IV),
            "II*" => Some(FiberType::IIStar),
            "III*" => Some(FiberType::IIIStar),
            "IV*" => Some(FiberType::IVStar),
            _ => None,
        };
        if let Some(f) = named {
            return Ok(f);
        }
        let rest = t.strip_prefix('I').ok_or_else(bad)?;
        let (star, digits) = if let Some(r) = rest.strip_prefix('*') {
            (true, r.to_string())
        } else if let Some(r) = rest.strip_suffix('*') {
            (true, r.to_string())
        } else {
            (false, rest.to_string())
        };
        let n: u32 = digits.parse().map_err(|_| bad())?;
        Ok(if star { FiberType::IStar(n) } else { FiberType::I(n) })
    }
}

/// Components of a fiber with their multiplicities and intersections.
#[derive(Clone, Debug)]
pub struct DualGraph {
    pub labels: Vec<String>,
    pub multiplicities: Vec<u32>,
    /// `(i, j, m)`: components `i != j` meet with total intersection `m`.
    pub edges: Vec<(usize, usize, i64)>,
}

impl DualGraph {
    fn of(ft: FiberType) -> DualGraph {
        let num = |k: u32| k.to_string();
        let mut g = DualGraph { labels: vec![], multiplicities: vec![], edges: vec![] };
        match ft {
            FiberType::I(n) => {
                let n = n.max(1);
                for k in 0..n {
                    g.push(&num(k), 1);
                }
                if n == 2 {
                    g.edges.push((0, 1, 2));
                } else if n > 2 {
                    for k in 0..n as usize {
                        g.edges.push((k, (k + 1) % n as usize, 1));
                    }
                }
            }
            FiberType::II => g.push("0", 1),
            FiberType::III => {
                g.push("0", 1);
                g.push("1", 1);
                g.edges.push((0, 1, 2));
            }
            FiberType::IV => {
                for k in 0..3 {
                    g.push(&num(k), 1);
                }
                g.edges.extend([(0, 1, 1), (1, 2, 1), (0, 2, 1)]);
            }
            FiberType::IStar(b) => {
                let (near, far1, far2) = if b % 2 == 0 { ("10", "01", "11") } else { ("2", "1", "3") };
                g.push("0", 1);
                g.push(near, 1);
                g.push(far1, 1);
                g.push(far2, 1);
                for k in 4..=b + 4 {
                    g.push(&format!("c{k}"), 2);
                }
                let first = 4;
                let last = 4 + b as usize;
                g.edges.extend([(0, first, 1), (1, first, 1), (2, last, 1), (3, last, 1)]);
                for k in first..last {
                    g.edges.push((k, k + 1, 1));
                }
            }
            FiberType::IIStar => {
                for (k, m) in [1, 2, 3, 4, 5, 6, 4, 2, 3].into_iter().enumerate() {
                    g.push(&num(k as u32), m);
                }
                for k in 0..7 {
                    g.edges.push((k, k + 1, 1));
                }
                g.edges.push((5, 8, 1));
            }
            FiberType::IIIStar => {
                for (k, m) in [1, 1, 2, 3, 4, 2, 3, 2].into_iter().enumerate() {
                    g.push(&num(k as u32), m);
                }
                let chain = [0, 2, 3, 4, 6, 7, 1];
                for w in chain.windows(2) {
                    g.edges.push((w[0], w[1], 1));
                }
                g.edges.push((4, 5, 1));
            }
            FiberType::IVStar => {
                for (k, m) in [1, 1, 1, 2, 2, 2, 3].into_iter().enumerate() {
                    g.push(&num(k as u32), m);
                }
                for arm in 0..3 {
                    g.edges.push((arm, arm + 3, 1));
                    g.edges.push((arm + 3, 6, 1));
                }
            }
        }
        g
    }

    fn push(&mut self, label: &str, m: u32) {
        self.labels.push(label.to_string());
        self.multiplicities.push(m);
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn intersection(&self, i: usize, j: usize) -> i64 {
        if i == j {
            return if self.labels.len() == 1 { 0 } else { -2 };
        }
        self.edges
            .iter()
            .filter(|(a, b, _)| (*a == i && *b == j) || (*a == j && *b == i))
            .map(|e| e.2)
            .sum()
    }

    pub fn intersection_matrix(&self) -> Matrix<BigRational> {
        let n = self.labels.len();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| rat(self.intersection(i, j), 1)).collect())
            .collect();
        Matrix::from_rows(rows)
    }

    /// Intersection number of the whole fiber with each component; zero for
    /// a well-formed fiber.
    pub fn fiber_dot(&self, i: usize) -> i64 {
        (0..self.labels.len())
            .map(|j| self.multiplicities[j] as i64 * self.intersection(i, j))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fiber_class_is_numerically_trivial() {
        let types = [
            FiberType::I(1),
            FiberType::I(2),
            FiberType::I(5),
            FiberType::IStar(0),
            FiberType::IStar(3),
            FiberType::II,
            FiberType::III,
            FiberType::IV,
            FiberType::IIStar,
            FiberType::IIIStar,
            FiberType::IVStar,
        ];
        for ft in types {
            let g = ft.dual_graph();
            assert_eq!(g.labels.len(), ft.component_count(), "{ft}");
            let simple = g.multiplicities.iter().filter(|m| **m == 1).count();
            assert_eq!(simple, ft.simple_count(), "{ft}");
            for i in 0..g.labels.len() {
                assert_eq!(g.fiber_dot(i), 0, "{ft} component {}", g.labels[i]);
            }
        }
    }

    #[test]
    fn contribution_examples() {
        assert_eq!(FiberType::I(2).contribution(1).unwrap(), rat(1, 2));
        assert_eq!(FiberType::I(4).contribution(1).unwrap(), rat(3, 4));
        assert_eq!(FiberType::III.contribution(0).unwrap(), rat(0, 1));
        assert_eq!(FiberType::IStar(2).contribution(2).unwrap(), rat(3, 2));
        assert!(FiberType::I(2).contribution(2).is_err());
    }

    #[test]
    fn parse_types() {
        for s in ["I0", "I4", "I*0", "I*3", "II", "III", "IV", "II*", "III*", "IV*"] {
            let ft: FiberType = s.parse().unwrap();
            assert_eq!(ft.to_string(), s);
        }
        assert_eq!("I_2".parse::<FiberType>().unwrap(), FiberType::I(2));
        assert_eq!("i1*".parse::<FiberType>().unwrap(), FiberType::IStar(1));
        assert!("V".parse::<FiberType>().is_err());
    }
}
