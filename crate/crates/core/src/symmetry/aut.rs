use super::perm::{PermGroup, Permutation, DEFAULT_GROUP_ORDER_CAP};
use crate::dartgraph::DartGraph;
use crate::error::{Error, Result};

/// Default vertex bound for the automorphism search.
pub const DEFAULT_AUT_VERTEX_CAP: usize = 16;
/// Largest bundle of parallel edges (or loops, or semiedges) at one place.
pub const MAX_BUNDLE: usize = 5;

/// Whether `f` preserves the vertex partition and commutes with lambda.
pub fn is_automorphism(g: &DartGraph, f: &Permutation) -> bool {
    if f.degree() != g.dart_count() {
        return false;
    }
    (0..g.dart_count()).all(|x| g.inv(f.apply(x)) == f.apply(g.inv(x)))
        && g.vertex_classes().iter().all(|class| {
            let v = g.vertex_of(f.apply(class[0]));
            class.iter().all(|&x| g.vertex_of(f.apply(x)) == v)
        })
}

/// The vertex permutation induced by a dart automorphism.
pub fn vertex_action(g: &DartGraph, f: &Permutation) -> Permutation {
    let image = (0..g.vertex_count())
        .map(|v| g.vertex_of(f.apply(g.darts_at(v)[0])))
        .collect();
    Permutation::new(image).expect("automorphisms permute vertices")
}

/// Per-vertex and per-pair dart bundles.
struct Bundles {
    /// `between[u][w]`: darts at `u` whose reverse lies at `w` (u != w)
    between: Vec<Vec<Vec<usize>>>,
    /// representative darts of loops at each vertex
    loops: Vec<Vec<usize>>,
    semiedges: Vec<Vec<usize>>,
}

impl Bundles {
    fn new(g: &DartGraph) -> Self {
        let n = g.vertex_count();
        let mut b = Bundles {
            between: vec![vec![Vec::new(); n]; n],
            loops: vec![Vec::new(); n],
            semiedges: vec![Vec::new(); n],
        };
        for x in 0..g.dart_count() {
            let u = g.vertex_of(x);
            if g.is_semiedge(x) {
                b.semiedges[u].push(x);
            } else if g.is_loop(x) {
                if g.is_positive(x) {
                    b.loops[u].push(x);
                }
            } else {
                b.between[u][g.head(x)].push(x);
            }
        }
        b
    }

    fn largest(&self) -> usize {
        let pairs = self.between.iter().flatten().map(Vec::len);
        let rest = self.loops.iter().chain(&self.semiedges).map(Vec::len);
        pairs.chain(rest).max().unwrap_or(0)
    }
}

fn permutations_of(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations_of(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// One independent choice: a list of alternatives, each a set of dart assignments.
type Choice = Vec<Vec<(usize, usize)>>;

fn choices(g: &DartGraph, b: &Bundles, sigma: &[usize]) -> Option<Vec<Choice>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for u in 0..n {
        for w in u + 1..n {
            let src = &b.between[u][w];
            let dst = &b.between[sigma[u]][sigma[w]];
            if src.len() != dst.len() {
                return None;
            }
            if src.is_empty() {
                continue;
            }
            out.push(
                permutations_of(src.len())
                    .into_iter()
                    .map(|p| {
                        src.iter()
                            .zip(&p)
                            .flat_map(|(&x, &i)| [(x, dst[i]), (g.inv(x), g.inv(dst[i]))])
                            .collect()
                    })
                    .collect(),
            );
        }
        let (src, dst) = (&b.semiedges[u], &b.semiedges[sigma[u]]);
        if src.len() != dst.len() {
            return None;
        }
        if !src.is_empty() {
            out.push(
                permutations_of(src.len())
                    .into_iter()
                    .map(|p| src.iter().zip(&p).map(|(&x, &i)| (x, dst[i])).collect())
                    .collect(),
            );
        }
        let (src, dst) = (&b.loops[u], &b.loops[sigma[u]]);
        if src.len() != dst.len() {
            return None;
        }
        if !src.is_empty() {
            let k = src.len();
            let mut alts = Vec::new();
            for p in permutations_of(k) {
                for flips in 0u32..(1 << k) {
                    alts.push(
                        src.iter()
                            .zip(&p)
                            .enumerate()
                            .flat_map(|(j, (&x, &i))| {
                                let (y, y_inv) = if flips & (1 << j) == 0 {
                                    (dst[i], g.inv(dst[i]))
                                } else {
                                    (g.inv(dst[i]), dst[i])
                                };
                                [(x, y), (g.inv(x), y_inv)]
                            })
                            .collect(),
                    );
                }
            }
            out.push(alts);
        }
    }
    Some(out)
}

fn expand(choices: &[Choice], image: &mut Vec<usize>, out: &mut Vec<Permutation>, cap: usize) -> Result<()> {
    let Some((first, rest)) = choices.split_first() else {
        if out.len() >= cap {
            return Err(Error::ScaleExceeded {
                what: "group order",
                actual: out.len() + 1,
                cap,
            });
        }
        out.push(Permutation::new(image.clone()).expect("bundle bijections"));
        return Ok(());
    };
    for alt in first {
        for &(x, y) in alt {
            image[x] = y;
        }
        expand(rest, image, out, cap)?;
    }
    Ok(())
}

/// Every dart automorphism inducing the vertex permutation `sigma`; empty when
/// `sigma` does not preserve edge multiplicities.
pub fn extend_vertex_map(g: &DartGraph, sigma: &Permutation) -> Result<Vec<Permutation>> {
    if sigma.degree() != g.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "vertex permutation of degree {} for {} vertices",
            sigma.degree(),
            g.vertex_count()
        )));
    }
    let b = Bundles::new(g);
    if b.largest() > MAX_BUNDLE {
        return Err(Error::ScaleExceeded {
            what: "edge bundle size",
            actual: b.largest(),
            cap: MAX_BUNDLE,
        });
    }
    let mut out = Vec::new();
    if let Some(ch) = choices(g, &b, sigma.image()) {
        let mut image = vec![usize::MAX; g.dart_count()];
        expand(&ch, &mut image, &mut out, DEFAULT_GROUP_ORDER_CAP)?;
    }
    Ok(out)
}

/// Full automorphism group as dart permutations.
///
/// Backtracks over vertex images with a degree/multiplicity signature filter
/// and pairwise multiplicity checks, then expands each vertex map to all
/// consistent dart bijections on edge bundles.
pub fn automorphisms(g: &DartGraph, max_vertices: usize) -> Result<PermGroup> {
    let n = g.vertex_count();
    if n > max_vertices {
        return Err(Error::ScaleExceeded {
            what: "vertices for automorphism search",
            actual: n,
            cap: max_vertices,
        });
    }
    let b = Bundles::new(g);
    if b.largest() > MAX_BUNDLE {
        return Err(Error::ScaleExceeded {
            what: "edge bundle size",
            actual: b.largest(),
            cap: MAX_BUNDLE,
        });
    }
    let mult: Vec<Vec<usize>> = (0..n)
        .map(|u| (0..n).map(|w| b.between[u][w].len()).collect())
        .collect();
    let signature: Vec<(usize, usize, usize, Vec<usize>)> = (0..n)
        .map(|u| {
            let mut row = mult[u].clone();
            row.sort_unstable();
            (g.valency(u), b.loops[u].len(), b.semiedges[u].len(), row)
        })
        .collect();

    let mut maps = Vec::new();
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(0, &mult, &signature, &mut sigma, &mut used, &mut maps);

    let cap = DEFAULT_GROUP_ORDER_CAP;
    let mut elements = Vec::new();
    for s in maps {
        let ch = choices(g, &b, &s).expect("vertex map preserves multiplicities");
        let mut image = vec![usize::MAX; g.dart_count()];
        expand(&ch, &mut image, &mut elements, cap)?;
    }
    PermGroup::from_elements(g.dart_count(), &elements, cap)
}

fn search(
    u: usize,
    mult: &[Vec<usize>],
    sig: &[(usize, usize, usize, Vec<usize>)],
    sigma: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    let n = mult.len();
    if u == n {
        out.push(sigma.clone());
        return;
    }
    for t in 0..n {
        if used[t] || sig[t] != sig[u] {
            continue;
        }
        if (0..u).any(|w| mult[u][w] != mult[t][sigma[w]]) {
            continue;
        }
        sigma[u] = t;
        used[t] = true;
        search(u + 1, mult, sig, sigma, used, out);
        used[t] = false;
    }
    sigma[u] = usize::MAX;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dartgraph::families::*;
    use crate::dartgraph::GraphBuilder;

    #[test]
    fn orders() {
        assert_eq!(automorphisms(&path(2), 16).unwrap().order(), 2);
        assert_eq!(automorphisms(&two_triple_bundles(), 16).unwrap().order(), 72);
        assert_eq!(automorphisms(&cycle(4), 16).unwrap().order(), 8);
        assert_eq!(automorphisms(&complete(4), 16).unwrap().order(), 24);
        assert_eq!(automorphisms(&petersen(), 16).unwrap().order(), 120);
        assert_eq!(automorphisms(&cube(3), 16).unwrap().order(), 48);
        assert_eq!(automorphisms(&complete_bipartite(3, 3), 16).unwrap().order(), 72);
        // one loop: identity and the flip
        let lp = GraphBuilder::new(1).edge(0, 0).build().unwrap();
        assert_eq!(automorphisms(&lp, 16).unwrap().order(), 2);
        assert_eq!(automorphisms(&bouquet_of_semiedges(3), 16).unwrap().order(), 6);
    }

    /// Oracle: all 4! vertex maps of C4, kept when they preserve adjacency.
    #[test]
    fn c4_matches_vertex_brute_force() {
        let g = cycle(4);
        let adj = g.multiplicity_matrix();
        let count = crate::symmetry::group::FiniteGroup::symmetric(4).order();
        let mut ok = 0;
        let s4: Vec<Vec<usize>> = permutations_of(4);
        assert_eq!(s4.len(), count);
        for p in s4 {
            if (0..4).all(|u| (0..4).all(|w| adj[u][w] == adj[p[u]][p[w]])) {
                ok += 1;
            }
        }
        assert_eq!(ok, 8);
    }

    #[test]
    fn every_element_is_an_automorphism() {
        let g = two_triple_bundles();
        let aut = automorphisms(&g, 16).unwrap();
        assert!(aut.elements().iter().all(|f| is_automorphism(&g, f)));
    }

    #[test]
    fn scale_caps() {
        assert!(matches!(
            automorphisms(&cube(4), 8),
            Err(Error::ScaleExceeded { .. })
        ));
        assert!(matches!(
            automorphisms(&theta(6), 16),
            Err(Error::ScaleExceeded { .. })
        ));
    }

    #[test]
    fn extension_of_vertex_maps() {
        let g = complete(4);
        let sigma = Permutation::parse_cycles(4, "(01)(23)").unwrap();
        let ext = extend_vertex_map(&g, &sigma).unwrap();
        assert_eq!(ext.len(), 1);
        assert!(is_automorphism(&g, &ext[0]));
        assert_eq!(vertex_action(&g, &ext[0]), sigma);
        let bad = Permutation::parse_cycles(4, "(01)").unwrap();
        assert_eq!(extend_vertex_map(&path(4), &bad).unwrap().len(), 0);
    }
}
