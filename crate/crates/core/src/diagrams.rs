//! Crossingless matchings, their circle diagrams, and the minimal saddle cobordism
//! between two glued diagrams.
//!
//! Boundary points are numbered `1..=2n` from the bottom. Point 1 is the marked
//! point, so the marked circle of every diagram is always circle 0 in canonical order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surgery::{Partition, Saddle, Strands, UnionFind};

/// A planar crossingless perfect matching on `2n` points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MatchingRepr", into = "MatchingRepr")]
pub struct Matching {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct MatchingRepr {
    n: usize,
    arcs: Vec<[usize; 2]>,
}

impl TryFrom<MatchingRepr> for Matching {
    type Error = Error;

    fn try_from(r: MatchingRepr) -> Result<Self> {
        Matching::new(r.n, r.arcs.into_iter().map(|[i, j]| (i, j)).collect())
    }
}

impl From<Matching> for MatchingRepr {
    fn from(m: Matching) -> Self {
        MatchingRepr {
            n: m.n,
            arcs: m.arcs.into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self.arcs.iter().map(|(i, j)| format!("({i},{j})")).collect();
        write!(f, "{{{}}}", arcs.join(","))
    }
}

impl Matching {
    /// Validates and canonicalizes a matching given as 1-based point pairs.
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        if arcs.len() != n {
            return Err(Error::InvalidMatching(format!(
                "expected {n} arcs, found {}",
                arcs.len()
            )));
        }
        let mut seen = vec![false; 2 * n + 1];
        let mut arcs: Vec<(usize, usize)> = arcs
            .into_iter()
            .map(|(i, j)| if i < j { (i, j) } else { (j, i) })
            .collect();
        for &(i, j) in &arcs {
            for p in [i, j] {
                if p == 0 || p > 2 * n {
                    return Err(Error::InvalidMatching(format!("point {p} out of range 1..={}", 2 * n)));
                }
                if seen[p] {
                    return Err(Error::InvalidMatching(format!("point {p} used twice")));
                }
                seen[p] = true;
            }
        }
        arcs.sort_unstable();
        for (x, &(i, j)) in arcs.iter().enumerate() {
            for &(k, l) in &arcs[x + 1..] {
                if (i < k && k < j && j < l) || (k < i && i < l && l < j) {
                    return Err(Error::InvalidMatching(format!(
                        "arcs ({i},{j}) and ({k},{l}) cross"
                    )));
                }
            }
        }
        Ok(Matching { n, arcs })
    }

    /// Parses `"1-2,3-4"`; the size is inferred from the number of arcs.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Matching::new(0, Vec::new());
        }
        let arcs = s
            .split(',')
            .map(|pair| {
                let (i, j) = pair
                    .split_once('-')
                    .ok_or_else(|| Error::InvalidMatching(format!("expected i-j, found {pair:?}")))?;
                let parse = |t: &str| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidMatching(format!("bad point {t:?}")))
                };
                Ok((parse(i)?, parse(j)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Matching::new(arcs.len(), arcs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn partner(&self, p: usize) -> usize {
        self.arcs
            .iter()
            .find_map(|&(i, j)| {
                if i == p {
                    Some(j)
                } else if j == p {
                    Some(i)
                } else {
                    None
                }
            })
            .expect("point out of range")
    }

    /// Depth of each arc: the number of arcs strictly enclosing it.
    pub fn depths(&self) -> Vec<usize> {
        self.arcs
            .iter()
            .map(|&(i, j)| self.arcs.iter().filter(|&&(k, l)| k < i && j < l).count())
            .collect()
    }

    /// The matching with `k - n` extra caps `(2i-1, 2i)` added above the existing points.
    pub fn stacked(&self, k: usize) -> Result<Self> {
        if k < self.n {
            return Err(Error::SizeMismatch(format!("cannot stack {} points into {k}", self.n)));
        }
        let mut arcs = self.arcs.clone();
        arcs.extend((self.n + 1..=k).map(|i| (2 * i - 1, 2 * i)));
        Matching::new(k, arcs)
    }

    /// All planar crossingless matchings on `2n` points, sorted lexicographically by arc list.
    pub fn enumerate(n: usize) -> Vec<Matching> {
        let points: Vec<usize> = (1..=2 * n).collect();
        let mut out: Vec<Matching> = noncrossing(&points)
            .into_iter()
            .map(|mut arcs| {
                arcs.sort_unstable();
                Matching { n, arcs }
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

fn noncrossing(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in (1..points.len()).step_by(2) {
        let inside = noncrossing(&points[1..k]);
        let outside = noncrossing(&points[k + 1..]);
        for i in &inside {
            for o in &outside {
                let mut arcs = vec![(points[0], points[k])];
                arcs.extend_from_slice(i);
                arcs.extend_from_slice(o);
                out.push(arcs);
            }
        }
    }
    out
}

pub fn enumerate_matchings(n: usize) -> Vec<Matching> {
    Matching::enumerate(n)
}

/// The closed 1-manifold `a!b`, recorded as a partition of the shared points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircleDiagram {
    left: Matching,
    right: Matching,
    circles: Vec<Vec<usize>>,
    circle_of: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct CircleDiagramRepr {
    left: Matching,
    right: Matching,
    circles: Vec<Vec<usize>>,
    marked: usize,
}

impl Serialize for CircleDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CircleDiagramRepr {
            left: self.left.clone(),
            right: self.right.clone(),
            circles: self.circles.clone(),
            marked: self.marked(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CircleDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CircleDiagramRepr::deserialize(d)?;
        let g = glue(&r.left, &r.right).map_err(serde::de::Error::custom)?;
        if g.circles != r.circles || g.marked() != r.marked {
            return Err(serde::de::Error::custom("circles do not match the glued matchings"));
        }
        Ok(g)
    }
}

impl CircleDiagram {
    pub fn left(&self) -> &Matching {
        &self.left
    }

    pub fn right(&self) -> &Matching {
        &self.right
    }

    pub fn n(&self) -> usize {
        self.left.n
    }

    pub fn circles(&self) -> &[Vec<usize>] {
        &self.circles
    }

    pub fn num_circles(&self) -> usize {
        self.circles.len()
    }

    /// Index of the circle through the 1-based point `p`.
    pub fn circle_of(&self, p: usize) -> usize {
        self.circle_of[p - 1]
    }

    /// Index of the marked circle, the one through point 1.
    pub fn marked(&self) -> usize {
        0
    }
}

/// Glues `a` (read as its reflection `a!`) to `b` along their common endpoints.
pub fn glue(a: &Matching, b: &Matching) -> Result<CircleDiagram> {
    if a.n != b.n {
        return Err(Error::SizeMismatch(format!("glue of sizes {} and {}", a.n, b.n)));
    }
    let n = a.n;
    let pairs = a.arcs.iter().chain(&b.arcs).map(|&(i, j)| (i - 1, j - 1));
    let p = Partition::from_pairs(2 * n, pairs);
    Ok(CircleDiagram {
        left: a.clone(),
        right: b.clone(),
        circles: p
            .members
            .iter()
            .map(|c| c.iter().map(|x| x + 1).collect())
            .collect(),
        circle_of: p.comp_of,
    })
}

/// One elementary saddle of the cobordism `a!b ⊔ b!c → a!c`, attached along an arc of `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgerySite {
    pub index: usize,
    pub points: (usize, usize),
}

/// The saddle sites of `Σ_{a,b,c}`, one per arc of `b`, sorted by smaller endpoint.
pub fn surgery_sequence(a: &Matching, b: &Matching, c: &Matching) -> Result<Vec<SurgerySite>> {
    check_sizes(a, b, c)?;
    Ok(b
        .arcs
        .iter()
        .enumerate()
        .map(|(k, &points)| SurgerySite {
            index: k + 1,
            points,
        })
        .collect())
}

fn check_sizes(a: &Matching, b: &Matching, c: &Matching) -> Result<()> {
    if a.n != b.n || b.n != c.n {
        return Err(Error::SizeMismatch(format!(
            "cobordism between sizes {}, {}, {}",
            a.n, b.n, c.n
        )));
    }
    Ok(())
}

/// Node layout for the two glued diagrams of a product: nodes `0..2n` are the
/// points of `a!b` and nodes `2n..4n` the points of `b!c`.
pub(crate) struct ProductStrands {
    pub strands: Strands,
    pub saddles: Vec<Saddle>,
    pub n: usize,
}

impl ProductStrands {
    pub fn new(a: &Matching, b: &Matching, c: &Matching, sites: &[SurgerySite]) -> Self {
        let n = a.n;
        let mut strands = Strands::new(4 * n);
        for &(i, j) in &a.arcs {
            strands.add_arc(i - 1, j - 1);
        }
        for &(i, j) in &b.arcs {
            strands.add_arc(i - 1, j - 1);
            strands.add_arc(2 * n + i - 1, 2 * n + j - 1);
        }
        for &(i, j) in &c.arcs {
            strands.add_arc(2 * n + i - 1, 2 * n + j - 1);
        }
        let saddles = sites
            .iter()
            .map(|s| {
                let (i, j) = s.points;
                Saddle {
                    first: (i - 1, j - 1),
                    second: (2 * n + i - 1, 2 * n + j - 1),
                }
            })
            .collect();
        ProductStrands { strands, saddles, n }
    }

    pub fn left_node(&self, p: usize) -> usize {
        p - 1
    }

    pub fn right_node(&self, p: usize) -> usize {
        2 * self.n + p - 1
    }
}

/// Topological data of one connected component of a saddle cobordism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CobordismComponentStats {
    pub saddles: usize,
    pub circles_in: usize,
    pub circles_out: usize,
    pub genus: usize,
}

impl CobordismComponentStats {
    /// Genus of a connected orientable surface built from cylinders and `saddles`
    /// saddles: `χ = -saddles = 2 - 2g - (in + out)`.
    pub fn from_counts(saddles: usize, circles_in: usize, circles_out: usize) -> Self {
        let twice = 2 + saddles as i64 - circles_in as i64 - circles_out as i64;
        assert!(
            twice >= 0 && twice % 2 == 0,
            "component with {saddles} saddles, {circles_in} in, {circles_out} out is not an orientable surface"
        );
        CobordismComponentStats {
            saddles,
            circles_in,
            circles_out,
            genus: (twice / 2) as usize,
        }
    }
}

/// Connected components of `Σ_{a,b,c}` with the assignment of boundary circles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaddleCobordism {
    pub source_left: CircleDiagram,
    pub source_right: CircleDiagram,
    pub target: CircleDiagram,
    /// Component of each circle of `a!b`.
    pub incoming_left: Vec<usize>,
    /// Component of each circle of `b!c`.
    pub incoming_right: Vec<usize>,
    /// Component of each circle of `a!c`.
    pub outgoing: Vec<usize>,
    /// Component of each saddle, in surgery order.
    pub saddle_component: Vec<usize>,
    pub components: Vec<CobordismComponentStats>,
}

pub fn cobordism_components(a: &Matching, b: &Matching, c: &Matching) -> Result<SaddleCobordism> {
    let sites = surgery_sequence(a, b, c)?;
    let ab = glue(a, b)?;
    let bc = glue(b, c)?;
    let ac = glue(a, c)?;
    let (l, r, o) = (ab.num_circles(), bc.num_circles(), ac.num_circles());
    let node_count = l + r + o + sites.len();
    let mut uf = UnionFind::new(node_count);
    for (k, site) in sites.iter().enumerate() {
        let saddle = l + r + o + k;
        // i and j share a circle on both incoming sides but may not on the outgoing one.
        let (i, j) = site.points;
        uf.union(saddle, ab.circle_of(i));
        uf.union(saddle, l + bc.circle_of(i));
        uf.union(saddle, l + r + ac.circle_of(i));
        uf.union(saddle, l + r + ac.circle_of(j));
    }
    // Circles come first in node order, so components are numbered by their first circle.
    let p = uf.into_partition();
    let mut counts = vec![(0usize, 0usize, 0usize); p.count()];
    for x in 0..l + r {
        counts[p.comp_of[x]].1 += 1;
    }
    for x in l + r..l + r + o {
        counts[p.comp_of[x]].2 += 1;
    }
    for x in l + r + o..node_count {
        counts[p.comp_of[x]].0 += 1;
    }
    Ok(SaddleCobordism {
        incoming_left: p.comp_of[..l].to_vec(),
        incoming_right: p.comp_of[l..l + r].to_vec(),
        outgoing: p.comp_of[l + r..l + r + o].to_vec(),
        saddle_component: p.comp_of[l + r + o..].to_vec(),
        components: counts
            .into_iter()
            .map(|(s, i, o)| CobordismComponentStats::from_counts(s, i, o))
            .collect(),
        source_left: ab,
        source_right: bc,
        target: ac,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surgery::step;

    fn m(s: &str) -> Matching {
        Matching::parse(s).unwrap()
    }

    /// Brute force: every perfect matching of the points, filtered by the interleaving test.
    fn brute_force_count(n: usize) -> usize {
        fn all(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
            if points.is_empty() {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for k in 1..points.len() {
                let rest: Vec<usize> = points[1..]
                    .iter()
                    .copied()
                    .filter(|&p| p != points[k])
                    .collect();
                for mut tail in all(&rest) {
                    tail.push((points[0], points[k]));
                    out.push(tail);
                }
            }
            out
        }
        let points: Vec<usize> = (1..=2 * n).collect();
        all(&points)
            .into_iter()
            .filter(|arcs| {
                arcs.iter().all(|&(i, j)| {
                    arcs.iter()
                        .all(|&(k, l)| !(i < k && k < j && j < l) && !(k < i && i < l && l < j))
                })
            })
            .count()
    }

    #[test]
    fn catalan_counts_match_brute_force() {
        for n in 0..=6 {
            assert_eq!(enumerate_matchings(n).len(), brute_force_count(n), "n = {n}");
        }
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_matchings(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_matchings(0), vec![Matching::new(0, vec![]).unwrap()]);
        assert_eq!(enumerate_matchings(1), vec![m("1-2")]);
        assert_eq!(enumerate_matchings(2), vec![m("1-2,3-4"), m("1-4,2-3")]);
        let three = enumerate_matchings(3);
        assert_eq!(three.len(), 5);
        assert!(three.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rejects_bad_matchings() {
        assert!(Matching::new(2, vec![(1, 3), (2, 4)]).is_err());
        assert!(Matching::new(2, vec![(1, 2), (2, 3)]).is_err());
        assert!(Matching::new(1, vec![(1, 3)]).is_err());
        assert!(Matching::new(2, vec![(1, 2)]).is_err());
    }

    #[test]
    fn glue_examples() {
        let a = m("1-2,3-4");
        let b = m("1-4,2-3");
        let aa = glue(&a, &a).unwrap();
        assert_eq!(aa.circles(), &[vec![1, 2], vec![3, 4]]);
        assert_eq!(aa.marked(), 0);
        let ab = glue(&a, &b).unwrap();
        assert_eq!(ab.circles(), &[vec![1, 2, 3, 4]]);
        let c = glue(&m("1-2,3-4,5-6"), &m("1-6,2-3,4-5")).unwrap();
        assert_eq!(c.num_circles(), 1);
        assert!(matches!(glue(&a, &m("1-2")), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn glue_invariants() {
        for n in 1..=4 {
            let ms = enumerate_matchings(n);
            for a in &ms {
                let aa = glue(a, a).unwrap();
                assert_eq!(aa.num_circles(), n);
                for circle in aa.circles() {
                    assert_eq!(circle.len(), 2);
                    assert_eq!(a.partner(circle[0]), circle[1]);
                }
                for b in &ms {
                    let ab = glue(a, b).unwrap();
                    let ba = glue(b, a).unwrap();
                    assert_eq!(ab.num_circles(), ba.num_circles());
                    assert!((1..=n).contains(&ab.num_circles()));
                    assert!(ab.circles()[0].contains(&1));
                }
            }
        }
    }

    #[test]
    fn surgery_sites_follow_middle_matching() {
        let a = m("1-2,3-4");
        let b = m("1-4,2-3");
        let sites = surgery_sequence(&a, &a, &a).unwrap();
        let pts: Vec<_> = sites.iter().map(|s| s.points).collect();
        assert_eq!(pts, vec![(1, 2), (3, 4)]);
        let pts: Vec<_> = surgery_sequence(&a, &b, &a)
            .unwrap()
            .iter()
            .map(|s| s.points)
            .collect();
        assert_eq!(pts, vec![(1, 4), (2, 3)]);
        for b in enumerate_matchings(3) {
            let x = m("1-2,3-4,5-6");
            let sites = surgery_sequence(&x, &b, &x).unwrap();
            assert_eq!(sites.len(), 3);
            assert_eq!(sites.iter().map(|s| s.points).collect::<Vec<_>>(), b.arcs());
        }
        assert!(surgery_sequence(&a, &m("1-2"), &a).is_err());
    }

    #[test]
    fn genus_formula_on_elementary_pieces() {
        assert_eq!(CobordismComponentStats::from_counts(1, 2, 1).genus, 0);
        assert_eq!(CobordismComponentStats::from_counts(1, 1, 2).genus, 0);
        assert_eq!(CobordismComponentStats::from_counts(2, 1, 1).genus, 1);
    }

    #[test]
    fn identity_cobordism_components_are_planar() {
        let a = m("1-2,3-4");
        let cob = cobordism_components(&a, &a, &a).unwrap();
        assert_eq!(cob.components.len(), 2);
        for c in &cob.components {
            assert_eq!(c.genus, 0);
            assert_eq!((c.saddles, c.circles_in, c.circles_out), (1, 2, 1));
        }
    }

    /// Second route: track components by replaying the saddles one at a time and
    /// joining every intermediate circle a saddle touches.
    fn replayed_partition(a: &Matching, b: &Matching, c: &Matching) -> (Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>) {
        let sites = surgery_sequence(a, b, c).unwrap();
        let mut ps = ProductStrands::new(a, b, c, &sites);
        let n = a.n();
        // Every intermediate circle gets a fresh id; ids are unioned across saddles.
        let mut uf = UnionFind::new(64 * (n + 1) * (n + 1));
        let mut next_id = 0;
        let mut current = ps.strands.components();
        let mut ids: Vec<usize> = (0..current.count()).map(|_| { next_id += 1; next_id - 1 }).collect();
        let initial_ids = ids.clone();
        let initial = current.clone();
        let mut saddle_ids = Vec::new();
        for &saddle in &ps.saddles {
            let (_, carried, after) = step(&mut ps.strands, saddle);
            let mut new_ids = vec![usize::MAX; after.count()];
            for (old, new) in carried.iter().enumerate() {
                if let Some(new) = new {
                    new_ids[*new] = ids[old];
                }
            }
            let sid = next_id;
            next_id += 1;
            saddle_ids.push(sid);
            uf.union(sid, ids[current.comp_of[saddle.first.0]]);
            uf.union(sid, ids[current.comp_of[saddle.second.0]]);
            for id in new_ids.iter_mut().filter(|id| **id == usize::MAX) {
                *id = next_id;
                next_id += 1;
                uf.union(sid, *id);
            }
            ids = new_ids;
            current = after;
        }
        let ab = glue(a, b).unwrap();
        let bc = glue(b, c).unwrap();
        let ac = glue(a, c).unwrap();
        let left: Vec<usize> = (0..ab.num_circles())
            .map(|k| uf.find(initial_ids[initial.comp_of[ps.left_node(ab.circles()[k][0])]]))
            .collect();
        let right: Vec<usize> = (0..bc.num_circles())
            .map(|k| uf.find(initial_ids[initial.comp_of[ps.right_node(bc.circles()[k][0])]]))
            .collect();
        let out: Vec<usize> = (0..ac.num_circles())
            .map(|k| uf.find(ids[current.comp_of[ps.left_node(ac.circles()[k][0])]]))
            .collect();
        let saddles: Vec<usize> = saddle_ids.iter().map(|&s| uf.find(s)).collect();
        (left, right, out, saddles)
    }

    fn same_partition(x: &[usize], y: &[usize]) -> bool {
        x.len() == y.len()
            && (0..x.len()).all(|i| (0..x.len()).all(|j| (x[i] == x[j]) == (y[i] == y[j])))
    }

    #[test]
    fn replay_agrees_with_component_formula() {
        let mut positive_genus = 0;
        for n in 1..=3 {
            let ms = enumerate_matchings(n);
            for a in &ms {
                for b in &ms {
                    for c in &ms {
                        let cob = cobordism_components(a, b, c).unwrap();
                        for comp in &cob.components {
                            assert!(comp.genus <= 1, "{a} {b} {c}");
                            positive_genus += comp.genus;
                        }
                        let (l, r, o, s) = replayed_partition(a, b, c);
                        let formula: Vec<usize> = cob
                            .incoming_left
                            .iter()
                            .chain(&cob.incoming_right)
                            .chain(&cob.outgoing)
                            .chain(&cob.saddle_component)
                            .copied()
                            .collect();
                        let replayed: Vec<usize> =
                            l.iter().chain(&r).chain(&o).chain(&s).copied().collect();
                        assert!(same_partition(&formula, &replayed), "{a} {b} {c}");
                    }
                }
            }
        }
        assert!(positive_genus > 0);
    }

    #[test]
    fn torus_component_at_three_strands() {
        let cob = cobordism_components(&m("1-2,3-6,4-5"), &m("1-4,2-3,5-6"), &m("1-6,2-5,3-4")).unwrap();
        assert_eq!(cob.components.len(), 1);
        let c = cob.components[0];
        assert_eq!((c.saddles, c.circles_in, c.circles_out, c.genus), (3, 2, 1, 1));
    }

    #[test]
    fn replayed_outgoing_circles_are_glue_circles() {
        for n in 1..=3 {
            let ms = enumerate_matchings(n);
            for a in &ms {
                for b in &ms {
                    for c in &ms {
                        let sites = surgery_sequence(a, b, c).unwrap();
                        let mut ps = ProductStrands::new(a, b, c, &sites);
                        for &s in &ps.saddles.clone() {
                            ps.strands.apply(s);
                        }
                        let fin = ps.strands.components();
                        let mut circles: Vec<Vec<usize>> = fin
                            .members
                            .iter()
                            .map(|nodes| nodes.iter().filter(|&&x| x < 2 * n).map(|x| x + 1).collect())
                            .collect();
                        circles.sort();
                        let mut expected = glue(a, c).unwrap().circles().to_vec();
                        expected.sort();
                        assert_eq!(circles, expected);
                    }
                }
            }
        }
    }

    #[test]
    fn json_shapes() {
        let a = m("3-4,1-2");
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"n":2,"arcs":[[1,2],[3,4]]}"#);
        let d = glue(&a, &m("1-4,2-3")).unwrap();
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(
            json,
            r#"{"left":{"n":2,"arcs":[[1,2],[3,4]]},"right":{"n":2,"arcs":[[1,4],[2,3]]},"circles":[[1,2,3,4]],"marked":0}"#
        );
        let back: CircleDiagram = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<Matching>(r#"{"n":2,"arcs":[[1,3],[2,4]]}"#).is_err());
    }
}
