use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagrams::Matching;
use crate::error::{Error, Result};
use crate::surgery::UnionFind;

/// A boundary point of a tangle: `L(i)` on the left side, `R(j)` on the right,
/// both numbered from 1 bottom to top.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    L(usize),
    R(usize),
}

impl fmt::Debug for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::L(i) => write!(f, "L{i}"),
            Endpoint::R(j) => write!(f, "R{j}"),
        }
    }
}

impl FromStr for Endpoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidTangle(format!("cannot parse endpoint {s:?}"));
        let (side, num) = s.split_at_checked(1).ok_or_else(bad)?;
        let k: usize = num.parse().map_err(|_| bad())?;
        match side {
            "L" | "l" => Ok(Endpoint::L(k)),
            "R" | "r" => Ok(Endpoint::R(k)),
            _ => Err(bad()),
        }
    }
}

/// A crossingless tangle without closed components from `2m` points on the left
/// to `2n` points on the right.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TangleRepr", into = "TangleRepr")]
pub struct FlatTangle {
    m: usize,
    n: usize,
    /// Each arc with its smaller node first, sorted.
    arcs: Vec<(Endpoint, Endpoint)>,
}

#[derive(Serialize, Deserialize)]
struct TangleRepr {
    m: usize,
    n: usize,
    arcs: Vec<(String, usize, String, usize)>,
}

fn side_and_index(p: Endpoint) -> (String, usize) {
    match p {
        Endpoint::L(i) => ("L".into(), i),
        Endpoint::R(j) => ("R".into(), j),
    }
}

impl From<FlatTangle> for TangleRepr {
    fn from(t: FlatTangle) -> Self {
        TangleRepr {
            m: t.m,
            n: t.n,
            arcs: t
                .arcs
                .iter()
                .map(|&(p, q)| {
                    let (s, i) = side_and_index(p);
                    let (u, j) = side_and_index(q);
                    (s, i, u, j)
                })
                .collect(),
        }
    }
}

impl TryFrom<TangleRepr> for FlatTangle {
    type Error = Error;

    fn try_from(r: TangleRepr) -> Result<Self> {
        let point = |side: &str, k: usize| format!("{side}{k}").parse::<Endpoint>();
        let arcs = r
            .arcs
            .iter()
            .map(|(s, i, u, j)| Ok((point(s, *i)?, point(u, *j)?)))
            .collect::<Result<Vec<_>>>()?;
        FlatTangle::new(r.m, r.n, arcs)
    }
}

impl FlatTangle {
    pub fn new(m: usize, n: usize, arcs: Vec<(Endpoint, Endpoint)>) -> Result<Self> {
        let total = 2 * (m + n);
        let node = |p: Endpoint| -> Result<usize> {
            match p {
                Endpoint::L(i) if (1..=2 * m).contains(&i) => Ok(i - 1),
                Endpoint::R(j) if (1..=2 * n).contains(&j) => Ok(2 * m + j - 1),
                _ => Err(Error::InvalidTangle(format!("endpoint {p} out of range for m={m}, n={n}"))),
            }
        };
        if arcs.len() != m + n {
            return Err(Error::InvalidTangle(format!(
                "{} arcs given, a flat tangle on {total} points has {}",
                arcs.len(),
                m + n
            )));
        }
        let mut seen = vec![false; total];
        let mut canonical = Vec::with_capacity(arcs.len());
        for &(p, q) in &arcs {
            let (u, v) = (node(p)?, node(q)?);
            for w in [u, v] {
                if seen[w] {
                    return Err(Error::InvalidTangle(format!("endpoint used twice in {p}-{q}")));
                }
                seen[w] = true;
            }
            canonical.push(if u < v { (p, q) } else { (q, p) });
        }
        let t = FlatTangle { m, n, arcs: canonical };
        let mut cyc: Vec<(usize, usize)> = t
            .arcs
            .iter()
            .map(|&(p, q)| {
                let (x, y) = (t.cyclic(p), t.cyclic(q));
                (x.min(y), x.max(y))
            })
            .collect();
        cyc.sort_unstable();
        for (k, &(a, b)) in cyc.iter().enumerate() {
            for &(c, d) in &cyc[k + 1..] {
                if a < c && c < b && b < d {
                    return Err(Error::InvalidTangle(format!("arcs cross in {t}")));
                }
            }
        }
        let mut t = t;
        t.arcs.sort_by_key(|&(p, _)| match p {
            Endpoint::L(i) => i - 1,
            Endpoint::R(j) => 2 * m + j - 1,
        });
        Ok(t)
    }

    /// Parses `"L1-R1,L2-L3,R2-R3"`.
    pub fn parse(m: usize, n: usize, s: &str) -> Result<Self> {
        let arcs = s
            .split(',')
            .filter(|part| !part.trim().is_empty())
            .map(|part| {
                let (p, q) = part
                    .split_once('-')
                    .ok_or_else(|| Error::InvalidTangle(format!("cannot parse arc {part:?}")))?;
                Ok((p.parse()?, q.parse()?))
            })
            .collect::<Result<Vec<_>>>()?;
        FlatTangle::new(m, n, arcs)
    }

    /// `L_i — R_i` for every `i`.
    pub fn identity(n: usize) -> Self {
        FlatTangle::new(n, n, (1..=2 * n).map(|i| (Endpoint::L(i), Endpoint::R(i))).collect())
            .expect("parallel strands are planar")
    }

    /// A crossingless matching read as a tangle with no left points.
    pub fn from_right_matching(b: &Matching) -> Self {
        let arcs = b.arcs().iter().map(|&(i, j)| (Endpoint::R(i), Endpoint::R(j))).collect();
        FlatTangle::new(0, b.n(), arcs).expect("matchings are planar")
    }

    /// All flat tangles of the given shape, in canonical order.
    pub fn enumerate(m: usize, n: usize) -> Vec<Self> {
        let at = |p: usize| {
            if p < 2 * m {
                Endpoint::L(2 * m - p)
            } else {
                Endpoint::R(p - 2 * m + 1)
            }
        };
        let mut out: Vec<FlatTangle> = Matching::enumerate(m + n)
            .iter()
            .map(|mt| {
                let arcs = mt.arcs().iter().map(|&(i, j)| (at(i - 1), at(j - 1))).collect();
                FlatTangle::new(m, n, arcs).expect("cyclic non-crossing matchings are planar")
            })
            .collect();
        out.sort();
        out
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(Endpoint, Endpoint)] {
        &self.arcs
    }

    pub fn partner(&self, p: Endpoint) -> Endpoint {
        self.arcs
            .iter()
            .find_map(|&(u, v)| {
                if u == p {
                    Some(v)
                } else if v == p {
                    Some(u)
                } else {
                    None
                }
            })
            .expect("endpoint of the tangle")
    }

    /// Whether the two bottom-most endpoints lie on one arc.
    pub fn bottom_points_joined(&self) -> bool {
        self.m > 0 && self.n > 0 && self.partner(Endpoint::L(1)) == Endpoint::R(1)
    }

    pub(crate) fn node(&self, p: Endpoint) -> usize {
        match p {
            Endpoint::L(i) => i - 1,
            Endpoint::R(j) => 2 * self.m + j - 1,
        }
    }

    pub(crate) fn endpoint(&self, node: usize) -> Endpoint {
        if node < 2 * self.m {
            Endpoint::L(node + 1)
        } else {
            Endpoint::R(node - 2 * self.m + 1)
        }
    }

    /// Position around the boundary: left side top to bottom, then right side bottom to top.
    fn cyclic(&self, p: Endpoint) -> usize {
        match p {
            Endpoint::L(i) => 2 * self.m - i,
            Endpoint::R(j) => 2 * self.m + j - 1,
        }
    }
}

impl fmt::Debug for FlatTangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FlatTangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.arcs.iter().map(|(p, q)| format!("{p}-{q}")).collect();
        write!(f, "({},{})[{}]", self.m, self.n, parts.join(","))
    }
}

/// The closed diagram `a!Tb`: `a` caps the left side of `T` and `b` the right side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleDiagram {
    left: Matching,
    right: Matching,
    tangle: FlatTangle,
    /// Circle index of each node; nodes are `L_i ↦ i-1`, `R_j ↦ 2m+j-1`.
    circle_of: Vec<usize>,
    circles: Vec<Vec<Endpoint>>,
}

impl TangleDiagram {
    pub fn left(&self) -> &Matching {
        &self.left
    }

    pub fn right(&self) -> &Matching {
        &self.right
    }

    pub fn tangle(&self) -> &FlatTangle {
        &self.tangle
    }

    pub fn num_circles(&self) -> usize {
        self.circles.len()
    }

    /// Circles as lists of boundary points, ordered by their first point.
    pub fn circles(&self) -> &[Vec<Endpoint>] {
        &self.circles
    }

    pub fn circle_of(&self, p: Endpoint) -> usize {
        self.circle_of[self.tangle.node(p)]
    }

    pub(crate) fn circle_of_node(&self, node: usize) -> usize {
        self.circle_of[node]
    }

    /// Circle through the bottom-most left point.
    pub fn left_marked(&self) -> Option<usize> {
        (self.tangle.m > 0).then(|| self.circle_of(Endpoint::L(1)))
    }

    /// Circle through the bottom-most right point.
    pub fn right_marked(&self) -> Option<usize> {
        (self.tangle.n > 0).then(|| self.circle_of(Endpoint::R(1)))
    }
}

pub fn glue_tangle(a: &Matching, t: &FlatTangle, b: &Matching) -> Result<TangleDiagram> {
    if a.n() != t.m || b.n() != t.n {
        return Err(Error::SizeMismatch(format!(
            "capping a ({},{}) tangle with matchings on {} and {} points",
            2 * t.m,
            2 * t.n,
            2 * a.n(),
            2 * b.n()
        )));
    }
    let nodes = 2 * (t.m + t.n);
    let mut uf = UnionFind::new(nodes);
    for &(i, j) in a.arcs() {
        uf.union(i - 1, j - 1);
    }
    for &(i, j) in b.arcs() {
        uf.union(2 * t.m + i - 1, 2 * t.m + j - 1);
    }
    for &(p, q) in &t.arcs {
        uf.union(t.node(p), t.node(q));
    }
    let partition = uf.into_partition();
    let circles = partition
        .members
        .iter()
        .map(|nodes| nodes.iter().map(|&x| t.endpoint(x)).collect())
        .collect();
    Ok(TangleDiagram {
        left: a.clone(),
        right: b.clone(),
        tangle: t.clone(),
        circle_of: partition.comp_of,
        circles,
    })
}
