use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Default cap on enumerated group orders.
pub const DEFAULT_GROUP_ORDER_CAP: usize = 20_000;

/// Permutation in image form: `image[x]` is where `x` goes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

/// Automorphisms act on darts.
pub type DartPermutation = Permutation;

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut hit = vec![false; n];
        for (i, &y) in image.iter().enumerate() {
            if y >= n {
                return Err(Error::InvalidArgument(format!(
                    "permutation image[{i}] = {y} out of range"
                )));
            }
            if hit[y] {
                return Err(Error::InvalidArgument(format!(
                    "permutation is not injective: {y} hit twice"
                )));
            }
            hit[y] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// Build from disjoint cycles on `0..n`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut image: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for (i, &a) in c.iter().enumerate() {
                if a >= n {
                    return Err(Error::InvalidArgument(format!("point {a} out of range")));
                }
                if used[a] {
                    return Err(Error::InvalidArgument(format!("point {a} repeated")));
                }
                used[a] = true;
                image[a] = c[(i + 1) % c.len()];
            }
        }
        Permutation::new(image)
    }

    /// Parse cycle notation such as `(0 1)(2 3)`, `(0,1)(2,3)` or `(01)(23)`.
    /// Without separators every digit is a separate point.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let body = open[..close].trim();
            let points: Vec<usize> = if body.contains(',') || body.contains(char::is_whitespace) {
                body.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse().map_err(|_| Error::Parse(format!("bad point {s:?}"))))
                    .collect::<Result<_>>()?
            } else {
                body.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| Error::Parse(format!("bad point {c:?}")))
                    })
                    .collect::<Result<_>>()?
            };
            cycles.push(points);
            rest = open[close + 1..].trim_start();
        }
        Permutation::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            image: other.image.iter().map(|&y| self.image[y]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { image: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&x| self.image[x] == x).collect()
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = self.compose(&p);
            k += 1;
        }
        k
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for start in 0..self.degree() {
            if seen[start] || self.image[start] == start {
                continue;
            }
            any = true;
            let mut pts = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                pts.push(x.to_string());
                x = self.image[x];
            }
            write!(f, "({})", pts.join(" "))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A permutation group with its elements enumerated.
///
/// Elements are ordered by breadth-first discovery from the identity over the
/// generators, i.e. by word length and then by generator order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Vec<usize>, usize>,
}

impl PermGroup {
    pub fn generate(degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidArgument(format!(
                "generator of degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
        let id = Permutation::identity(degree);
        let mut index = HashMap::from([(id.image.clone(), 0)]);
        let mut elements = vec![id];
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let p = elements[i].compose(g);
                if !index.contains_key(&p.image) {
                    if elements.len() >= cap {
                        return Err(Error::ScaleExceeded {
                            what: "group order",
                            actual: elements.len() + 1,
                            cap,
                        });
                    }
                    index.insert(p.image.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            elements,
            index,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::generate(degree, vec![], 1).expect("trivial group")
    }

    /// Group generated by a known element set; generators are picked greedily.
    pub fn from_elements(degree: usize, elements: &[Permutation], cap: usize) -> Result<Self> {
        let mut group = PermGroup::trivial(degree);
        for e in elements {
            if !group.contains(e) {
                let mut gens = group.generators.clone();
                gens.push(e.clone());
                group = PermGroup::generate(degree, gens, cap)?;
            }
        }
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(&p.image)
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(&p.image).copied()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|a| {
            self.generators
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }

    /// Orbits of `0..degree`, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = self.elements.iter().map(|g| g.apply(x)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }
}
