use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A path as the sequence of arrows traversed, first arrow first. Empty means the trivial path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Finite acyclic quiver. Vertices and arrows are addressed by index; names are for I/O.
#[derive(Clone)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vindex: HashMap<String, usize>,
    aindex: HashMap<String, usize>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    topo: Vec<usize>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}
impl Eq for Quiver {}

impl std::hash::Hash for Quiver {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.vertices.hash(state);
        self.arrows.hash(state);
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quiver[")?;
        for (i, a) in self.arrows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(
                f,
                "{}: {} -> {}",
                a.name, self.vertices[a.source], self.vertices[a.target]
            )?;
        }
        write!(f, "]")
    }
}

impl Quiver {
    /// Builds a quiver from vertex names and `(name, source, target)` triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Arc<Self>> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut vindex = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vindex.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex `{v}`")));
            }
        }
        let mut list = Vec::new();
        let mut aindex = HashMap::new();
        for (name, s, t) in arrows {
            let name = name.as_ref().to_string();
            let source = *vindex
                .get(s.as_ref())
                .ok_or_else(|| Error::UnknownVertex(s.as_ref().to_string()))?;
            let target = *vindex
                .get(t.as_ref())
                .ok_or_else(|| Error::UnknownVertex(t.as_ref().to_string()))?;
            if aindex.insert(name.clone(), list.len()).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate arrow `{name}`")));
            }
            list.push(Arrow {
                name,
                source,
                target,
            });
        }
        Self::from_parts(vertices, list, vindex, aindex).map(Arc::new)
    }

    fn from_parts(
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        vindex: HashMap<String, usize>,
        aindex: HashMap<String, usize>,
    ) -> Result<Self> {
        let n = vertices.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (i, a) in arrows.iter().enumerate() {
            out[a.source].push(i);
            inc[a.target].push(i);
        }
        // Kahn's algorithm, smallest index first for determinism
        let mut indeg: Vec<usize> = inc.iter().map(|v| v.len()).collect();
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(&v) = ready.iter().next() {
            ready.remove(&v);
            topo.push(v);
            for &a in &out[v] {
                let t = arrows[a].target;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.insert(t);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::CyclicQuiver);
        }
        Ok(Self {
            vertices,
            arrows,
            vindex,
            aindex,
            out,
            inc,
            topo,
        })
    }

    /// `1 -> 2 -> ... -> n` with arrows `a1, ..., a(n-1)`.
    pub fn linear_a(n: usize) -> Arc<Self> {
        let vs: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String, String)> = (1..n)
            .map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string()))
            .collect();
        Self::new(&vs, &arrows).expect("linear quiver is valid")
    }

    /// Alternating orientation `1 -> 2 <- 3 -> 4 <- ...`.
    pub fn zigzag_a(n: usize) -> Arc<Self> {
        let vs: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String, String)> = (1..n)
            .map(|i| {
                let (s, t) = if i % 2 == 1 { (i, i + 1) } else { (i + 1, i) };
                (format!("a{i}"), s.to_string(), t.to_string())
            })
            .collect();
        Self::new(&vs, &arrows).expect("zigzag quiver is valid")
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }
    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }
    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vindex
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }
    pub fn arrow_id(&self, name: &str) -> Result<usize> {
        self.aindex
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }
    pub fn outgoing(&self, v: usize) -> &[usize] {
        &self.out[v]
    }
    pub fn incoming(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }
    /// Vertices in a topological order (sources first).
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// Same vertices, every arrow reversed (names kept).
    pub fn opposite(&self) -> Arc<Self> {
        let arrows: Vec<Arrow> = self
            .arrows
            .iter()
            .map(|a| Arrow {
                name: a.name.clone(),
                source: a.target,
                target: a.source,
            })
            .collect();
        Arc::new(
            Self::from_parts(
                self.vertices.clone(),
                arrows,
                self.vindex.clone(),
                self.aindex.clone(),
            )
            .expect("opposite of an acyclic quiver is acyclic"),
        )
    }

    /// All paths starting at `a`, trivial path first, then depth-first in arrow order.
    pub fn paths_from(&self, a: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = vec![Path {
            source: a,
            target: a,
            arrows: Vec::new(),
        }];
        while let Some(p) = stack.pop() {
            for &arr in self.out[p.target].iter().rev() {
                let mut arrows = p.arrows.clone();
                arrows.push(arr);
                stack.push(Path {
                    source: a,
                    target: self.arrows[arr].target,
                    arrows,
                });
            }
            out.push(p);
        }
        out
    }

    /// Paths from `a` to `b` in the order of [`Quiver::paths_from`].
    pub fn paths(&self, a: usize, b: usize) -> Vec<Path> {
        self.paths_from(a)
            .into_iter()
            .filter(|p| p.target == b)
            .collect()
    }

    /// ⟨d,e⟩ = Σ_x d_x e_x − Σ_{α:x→y} d_x e_y.
    pub fn euler_form(&self, d: &[usize], e: &[usize]) -> i64 {
        let diag: i64 = d.iter().zip(e).map(|(&a, &b)| (a * b) as i64).sum();
        let off: i64 = self
            .arrows
            .iter()
            .map(|a| (d[a.source] * e[a.target]) as i64)
            .sum();
        diag - off
    }

    /// Number of arrows touching `v`, ignoring orientation.
    pub fn degree(&self, v: usize) -> usize {
        self.out[v].len() + self.inc[v].len()
    }

    /// DSL text: `vertex ...` line followed by `arrow name: s -> t` lines.
    pub fn to_dsl(&self) -> String {
        let mut s = format!("vertex {}\n", self.vertices.join(" "));
        for a in &self.arrows {
            s.push_str(&format!(
                "arrow {}: {} -> {}\n",
                a.name, self.vertices[a.source], self.vertices[a.target]
            ));
        }
        s
    }
}

/// Left-to-right order of the vertices of a quiver whose underlying graph is a line.
pub fn line_order(q: &Quiver) -> Result<Vec<usize>> {
    let n = q.num_vertices();
    if n == 0 {
        return Err(Error::UnsupportedShape("empty quiver".into()));
    }
    if q.num_arrows() + 1 != n || (0..n).any(|v| q.degree(v) > 2) {
        return Err(Error::UnsupportedShape(
            "underlying graph is not a line".into(),
        ));
    }
    let start = (0..n)
        .find(|&v| q.degree(v) <= 1)
        .expect("a line has an endpoint");
    let mut order = vec![start];
    let mut used = vec![false; q.num_arrows()];
    let mut cur = start;
    loop {
        let next = q
            .outgoing(cur)
            .iter()
            .chain(q.incoming(cur))
            .find(|&&a| !used[a])
            .copied();
        let Some(a) = next else { break };
        used[a] = true;
        let arr = q.arrow(a);
        cur = if arr.source == cur {
            arr.target
        } else {
            arr.source
        };
        order.push(cur);
    }
    if order.len() != n {
        return Err(Error::UnsupportedShape(
            "underlying graph is disconnected".into(),
        ));
    }
    Ok(order)
}

/// Infinite quivers presented through nested finite truncations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfiniteQuiverSpec {
    /// `1 -> 2 <- 3 -> 4 -> 5 -> ...`
    AInfZigzag,
}

impl InfiniteQuiverSpec {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "paper-ainf-zigzag" | "ainf-zigzag" => Some(Self::AInfZigzag),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::AInfZigzag => "ainf-zigzag",
        }
    }

    /// Full subquiver on vertices `1..=n`.
    pub fn truncate(self, n: usize) -> Result<Arc<Quiver>> {
        match self {
            Self::AInfZigzag => {
                if n < 3 {
                    return Err(Error::Precondition(format!(
                        "truncation window {n} too small, need at least 3"
                    )));
                }
                let vs: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
                let mut arrows = vec![
                    ("a1".to_string(), "1".to_string(), "2".to_string()),
                    ("a2".to_string(), "3".to_string(), "2".to_string()),
                ];
                for k in 3..n {
                    arrows.push((format!("a{k}"), k.to_string(), (k + 1).to_string()));
                }
                Quiver::new(&vs, &arrows)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_rejected() {
        let r = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]);
        assert!(matches!(r, Err(Error::CyclicQuiver)));
        assert!(matches!(
            Quiver::new(&["1"], &[("a", "1", "9")]),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn paths_in_a3() {
        let q = Quiver::linear_a(3);
        assert_eq!(q.paths_from(0).len(), 3);
        assert_eq!(q.paths(0, 2)[0].arrows, vec![0, 1]);
        assert!(q.paths(2, 0).is_empty());
    }

    #[test]
    fn euler_examples() {
        let q = Quiver::linear_a(2);
        assert_eq!(q.euler_form(&[1, 0], &[1, 0]), 1);
        assert_eq!(q.euler_form(&[1, 0], &[0, 1]), -1);
        assert_eq!(q.euler_form(&[1, 1], &[1, 0]), 1);
    }

    #[test]
    fn zigzag_truncation_is_a_line() {
        let q = InfiniteQuiverSpec::AInfZigzag.truncate(6).unwrap();
        let order: Vec<&str> = line_order(&q)
            .unwrap()
            .into_iter()
            .map(|v| q.vertex_name(v))
            .collect();
        assert_eq!(order, vec!["1", "2", "3", "4", "5", "6"]);
        assert_eq!(q.arrow(1).source, 2);
        assert_eq!(q.opposite().opposite().as_ref(), q.as_ref());
    }
}
