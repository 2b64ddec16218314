//! Trivalent spatial-graph diagrams and their colorings by an associated
//! quandle, with a transverse orientation on every edge.
//!
//! Arcs are oriented from tail to head. An arc end is used by exactly one
//! crossing slot (the head of the incoming under-arc, the tail of the
//! outgoing one) or one vertex slot. An edge is a maximal chain of arcs
//! joined through under-crossings. Each edge carries one orientation bit:
//! clear means its normal points to the left of the arc direction.

use crate::algebra::GFamilyTable;
use crate::report::{ValidationReport, Violation};
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

pub type Color = (usize, usize);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown arc '{arc}'")]
    UnknownArc { line: usize, arc: String },
    #[error("line {line}: duplicate arc '{arc}'")]
    DuplicateArc { line: usize, arc: String },
    #[error("line {line}: arc end {end} used twice")]
    DuplicateEnd { line: usize, end: String },
    #[error("line {line}: vertex needs exactly three ends, got {got}")]
    Arity { line: usize, got: usize },
    #[error("arc end {end} is dangling")]
    Dangling { end: String },
    #[error("loop arc '{arc}' cannot have its ends used")]
    LoopEnd { arc: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct End {
    pub arc: usize,
    pub head: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Crossing {
    /// +1 when the under-arc passes the over-arc in the direction of the
    /// over-arc's left normal.
    pub sign: i8,
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Vertex {
    pub ends: [End; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDiagram {
    names: Vec<String>,
    loops: Vec<bool>,
    crossings: Vec<Crossing>,
    vertices: Vec<Vertex>,
    edge_of: Vec<usize>,
    edges: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Coloring {
    pub arc_colors: Vec<Color>,
    /// One bit per edge; true flips the normal to the right.
    pub orientations: Vec<bool>,
}

impl GraphDiagram {
    /// Builds and checks a diagram from raw parts.
    pub fn new(
        names: Vec<String>,
        loops: Vec<bool>,
        crossings: Vec<Crossing>,
        vertices: Vec<Vertex>,
    ) -> Result<Self, DiagramError> {
        let n = names.len();
        let mut used = vec![[false; 2]; n];
        let mut mark = |e: End, names: &[String]| -> Result<(), DiagramError> {
            let show = format!("{}:{}", names[e.arc], if e.head { "head" } else { "tail" });
            if loops[e.arc] {
                return Err(DiagramError::LoopEnd { arc: names[e.arc].clone() });
            }
            let slot = &mut used[e.arc][e.head as usize];
            if *slot {
                return Err(DiagramError::DuplicateEnd { line: 0, end: show });
            }
            *slot = true;
            Ok(())
        };
        for c in &crossings {
            mark(End { arc: c.under_in, head: true }, &names)?;
            mark(End { arc: c.under_out, head: false }, &names)?;
        }
        for v in &vertices {
            for &e in &v.ends {
                mark(e, &names)?;
            }
        }
        for a in 0..n {
            for (h, tag) in [(false, "tail"), (true, "head")] {
                if !loops[a] && !used[a][h as usize] {
                    return Err(DiagramError::Dangling { end: format!("{}:{tag}", names[a]) });
                }
            }
        }
        // union arcs through crossings
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for c in &crossings {
            let (a, b) = (find(&mut parent, c.under_in), find(&mut parent, c.under_out));
            parent[a.max(b)] = a.min(b);
        }
        let mut root_edge = HashMap::new();
        let mut edge_of = vec![0; n];
        let mut edges: Vec<Vec<usize>> = Vec::new();
        for (a, slot) in edge_of.iter_mut().enumerate() {
            let r = find(&mut parent, a);
            let e = *root_edge.entry(r).or_insert_with(|| {
                edges.push(Vec::new());
                edges.len() - 1
            });
            *slot = e;
            edges[e].push(a);
        }
        Ok(GraphDiagram { names, loops, crossings, vertices, edge_of, edges })
    }

    pub fn empty() -> Self {
        GraphDiagram { names: vec![], loops: vec![], crossings: vec![], vertices: vec![], edge_of: vec![], edges: vec![] }
    }

    pub fn arc_count(&self) -> usize {
        self.names.len()
    }
    pub fn arc_names(&self) -> &[String] {
        &self.names
    }
    pub fn is_loop(&self, arc: usize) -> bool {
        self.loops[arc]
    }
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }
    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }
    pub fn edge_of(&self, arc: usize) -> usize {
        self.edge_of[arc]
    }
    pub fn arc_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    /// Renames arcs: arc i becomes arc perm[i].
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, DiagramError> {
        let n = self.names.len();
        let mut names = vec![String::new(); n];
        let mut loops = vec![false; n];
        for i in 0..n {
            names[perm[i]] = self.names[i].clone();
            loops[perm[i]] = self.loops[i];
        }
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing { sign: c.sign, over: perm[c.over], under_in: perm[c.under_in], under_out: perm[c.under_out] })
            .collect();
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex { ends: v.ends.map(|e| End { arc: perm[e.arc], head: e.head }) })
            .collect();
        GraphDiagram::new(names, loops, crossings, vertices)
    }

    /// Pushes a finger of `over` across the head end of arc `under`,
    /// creating two crossings of opposite sign.
    pub fn insert_r2(&self, under: usize, over: usize, sign: i8) -> Result<Self, DiagramError> {
        if self.loops[under] {
            return self.insert_r2_loop(under, over, sign);
        }
        let mut names = self.names.clone();
        let mut loops = self.loops.clone();
        let a1 = names.len();
        names.push(format!("{}'1", self.names[under]));
        let a2 = names.len();
        names.push(format!("{}'2", self.names[under]));
        loops.extend([false, false]);
        let mut crossings = self.crossings.clone();
        let mut vertices = self.vertices.clone();
        // whatever consumed under:head now consumes a2:head
        for c in crossings.iter_mut() {
            if c.under_in == under {
                c.under_in = a2;
            }
        }
        for v in vertices.iter_mut() {
            for e in v.ends.iter_mut() {
                if e.arc == under && e.head {
                    e.arc = a2;
                }
            }
        }
        crossings.push(Crossing { sign, over, under_in: under, under_out: a1 });
        crossings.push(Crossing { sign: -sign, over, under_in: a1, under_out: a2 });
        GraphDiagram::new(names, loops, crossings, vertices)
    }

    fn insert_r2_loop(&self, under: usize, over: usize, sign: i8) -> Result<Self, DiagramError> {
        let mut names = self.names.clone();
        let mut loops = self.loops.clone();
        loops[under] = false;
        let a1 = names.len();
        names.push(format!("{}'1", self.names[under]));
        loops.push(false);
        let mut crossings = self.crossings.clone();
        crossings.push(Crossing { sign, over, under_in: under, under_out: a1 });
        crossings.push(Crossing { sign: -sign, over, under_in: a1, under_out: under });
        GraphDiagram::new(names, loops, crossings, self.vertices.clone())
    }

    /// In-flag of a vertex end: the end points into the vertex along the
    /// transverse orientation of its edge.
    fn inward(&self, e: End, bits: &[bool]) -> bool {
        e.head ^ bits[self.edge_of[e.arc]]
    }

    fn crossing_out(&self, f: &GFamilyTable, c: &Crossing, colors: &[Color], bits: &[bool]) -> Color {
        let o = colors[c.over];
        if (c.sign > 0) ^ bits[self.edge_of[c.over]] {
            f.act(colors[c.under_in], o)
        } else {
            f.act_inv(colors[c.under_in], o)
        }
    }

    fn vertex_ok(&self, f: &GFamilyTable, v: &Vertex, colors: &[Color], bits: &[bool]) -> bool {
        let grp = f.group();
        let c: Vec<Color> = v.ends.iter().map(|e| colors[e.arc]).collect();
        if c[0].0 != c[1].0 || c[1].0 != c[2].0 {
            return false;
        }
        let mut prod = grp.identity();
        let mut dirs = Vec::new();
        for (e, col) in v.ends.iter().zip(&c) {
            let inn = self.inward(*e, bits);
            prod = grp.mul(prod, if inn { col.1 } else { grp.inv(col.1) });
            if col.1 != grp.identity() {
                dirs.push(inn);
            }
        }
        prod == grp.identity() && (dirs.len() < 2 || dirs.iter().any(|&d| d != dirs[0]))
    }

    /// Checks every crossing and vertex rule; returns the violations.
    pub fn check_coloring(&self, f: &GFamilyTable, c: &Coloring) -> ValidationReport {
        let mut rep = ValidationReport::default();
        for (i, x) in self.crossings.iter().enumerate() {
            rep.checked += 1;
            let want = self.crossing_out(f, x, &c.arc_colors, &c.orientations);
            if c.arc_colors[x.under_out] != want {
                rep.push(Violation { rule: "crossing".into(), witness: vec![i], detail: format!("expected {want:?}") });
            }
        }
        for (i, v) in self.vertices.iter().enumerate() {
            rep.checked += 1;
            if !self.vertex_ok(f, v, &c.arc_colors, &c.orientations) {
                rep.push(Violation { rule: "vertex".into(), witness: vec![i], detail: String::new() });
            }
        }
        rep
    }

    /// Exhaustive search with propagation: arcs are assigned in index
    /// order, and any crossing whose inputs are known fixes its output.
    fn search(&self, f: &GFamilyTable, bits: &[bool], first: Option<Color>, out: &mut Vec<Coloring>) {
        let n = self.arc_count();
        let mut colors: Vec<Option<Color>> = vec![None; n];
        let pairs: Vec<Color> =
            (0..f.carrier_size()).flat_map(|a| (0..f.group().order()).map(move |g| (a, g))).collect();
        self.descend(f, bits, &pairs, first, &mut colors, out);
    }

    fn descend(
        &self,
        f: &GFamilyTable,
        bits: &[bool],
        pairs: &[Color],
        first: Option<Color>,
        colors: &mut Vec<Option<Color>>,
        out: &mut Vec<Coloring>,
    ) {
        let Some(next) = colors.iter().position(|c| c.is_none()) else {
            let full: Vec<Color> = colors.iter().map(|c| c.unwrap()).collect();
            if self.vertices.iter().all(|v| self.vertex_ok(f, v, &full, bits)) {
                out.push(Coloring { arc_colors: full, orientations: bits.to_vec() });
            }
            return;
        };
        let choices: Vec<Color> = match (next, first) {
            (0, Some(c)) => vec![c],
            _ => pairs.to_vec(),
        };
        for c in choices {
            let saved = colors.clone();
            colors[next] = Some(c);
            if self.propagate(f, bits, colors) {
                self.descend(f, bits, pairs, first, colors, out);
            }
            *colors = saved;
        }
    }

    /// Forces crossing outputs and vertex base colors; false on conflict.
    fn propagate(&self, f: &GFamilyTable, bits: &[bool], colors: &mut [Option<Color>]) -> bool {
        loop {
            let mut changed = false;
            for x in &self.crossings {
                if let (Some(i), Some(o)) = (colors[x.under_in], colors[x.over]) {
                    let mut cs: Vec<Color> = vec![(0, 0); colors.len()];
                    cs[x.under_in] = i;
                    cs[x.over] = o;
                    let want = self.crossing_out(f, x, &cs, bits);
                    match colors[x.under_out] {
                        None => {
                            colors[x.under_out] = Some(want);
                            changed = true;
                        }
                        Some(w) if w != want => return false,
                        _ => {}
                    }
                }
            }
            for v in &self.vertices {
                let bases: Vec<usize> = v.ends.iter().filter_map(|e| colors[e.arc].map(|c| c.0)).collect();
                if bases.windows(2).any(|w| w[0] != w[1]) {
                    return false;
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn bit_assignments(&self) -> Vec<Vec<bool>> {
        let e = self.edges.len();
        (0..1u64 << e).map(|m| (0..e).map(|i| m >> i & 1 == 1).collect()).collect()
    }
}

/// All colorings, sorted by arc colors and then orientation bits.
pub fn enumerate_colorings(d: &GraphDiagram, f: &GFamilyTable) -> Vec<Coloring> {
    use rayon::prelude::*;
    if d.arc_count() == 0 {
        return vec![Coloring { arc_colors: vec![], orientations: vec![] }];
    }
    let pairs: Vec<Color> =
        (0..f.carrier_size()).flat_map(|a| (0..f.group().order()).map(move |g| (a, g))).collect();
    let mut all: Vec<Coloring> = pairs
        .par_iter()
        .flat_map_iter(|&p| {
            let mut out = Vec::new();
            for bits in d.bit_assignments() {
                d.search(f, &bits, Some(p), &mut out);
            }
            out
        })
        .collect();
    all.sort();
    all
}

pub fn coloring_count(d: &GraphDiagram, f: &GFamilyTable) -> usize {
    enumerate_colorings(d, f).len()
}

fn parse_end(tok: &str, names: &HashMap<String, usize>, line: usize) -> Result<End, DiagramError> {
    let (a, side) = tok
        .rsplit_once(':')
        .ok_or_else(|| DiagramError::Syntax { line, msg: format!("expected <arc>:<head|tail>, got '{tok}'") })?;
    let head = match side {
        "head" => true,
        "tail" => false,
        _ => return Err(DiagramError::Syntax { line, msg: format!("bad end side '{side}'") }),
    };
    let arc = *names.get(a).ok_or_else(|| DiagramError::UnknownArc { line, arc: a.to_string() })?;
    Ok(End { arc, head })
}

/// Reads the line format: `arc <id> [loop]`,
/// `crossing <+|-> <over> <under_in> <under_out>`, `vertex <end> <end> <end>`.
pub fn parse_graph_diagram(text: &str) -> Result<GraphDiagram, DiagramError> {
    let mut names = Vec::new();
    let mut loops = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut crossings = Vec::new();
    let mut vertices = Vec::new();
    let mut end_line: HashMap<End, usize> = HashMap::new();
    let arc = |index: &HashMap<String, usize>, tok: &str, line: usize| {
        index.get(tok).copied().ok_or_else(|| DiagramError::UnknownArc { line, arc: tok.to_string() })
    };
    let mut claim = |e: End, line: usize, names: &[String]| {
        if end_line.insert(e, line).is_some() {
            let side = if e.head { "head" } else { "tail" };
            return Err(DiagramError::DuplicateEnd { line, end: format!("{}:{side}", names[e.arc]) });
        }
        Ok(())
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks[0] {
            "arc" => {
                let (name, is_loop) = match toks.as_slice() {
                    [_, n] => (*n, false),
                    [_, n, "loop"] => (*n, true),
                    _ => return Err(DiagramError::Syntax { line, msg: "expected: arc <id> [loop]".into() }),
                };
                if index.contains_key(name) {
                    return Err(DiagramError::DuplicateArc { line, arc: name.into() });
                }
                index.insert(name.to_string(), names.len());
                names.push(name.to_string());
                loops.push(is_loop);
            }
            "crossing" => {
                if toks.len() != 5 {
                    return Err(DiagramError::Syntax { line, msg: "expected: crossing <sign> <over> <in> <out>".into() });
                }
                let sign = match toks[1] {
                    "+" => 1,
                    "-" => -1,
                    s => return Err(DiagramError::Syntax { line, msg: format!("bad sign '{s}'") }),
                };
                let c = Crossing {
                    sign,
                    over: arc(&index, toks[2], line)?,
                    under_in: arc(&index, toks[3], line)?,
                    under_out: arc(&index, toks[4], line)?,
                };
                claim(End { arc: c.under_in, head: true }, line, &names)?;
                claim(End { arc: c.under_out, head: false }, line, &names)?;
                crossings.push(c);
            }
            "vertex" => {
                if toks.len() != 4 {
                    return Err(DiagramError::Arity { line, got: toks.len() - 1 });
                }
                let mut ends = [End { arc: 0, head: false }; 3];
                for k in 0..3 {
                    ends[k] = parse_end(toks[k + 1], &index, line)?;
                    claim(ends[k], line, &names)?;
                }
                vertices.push(Vertex { ends });
            }
            other => return Err(DiagramError::Syntax { line, msg: format!("unknown record '{other}'") }),
        }
    }
    GraphDiagram::new(names, loops, crossings, vertices)
}

impl fmt::Display for GraphDiagram {
    /// Canonical form: arcs in index order, then sorted crossings and vertices.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.names.iter().enumerate() {
            writeln!(out, "arc {n}{}", if self.loops[i] { " loop" } else { "" })?;
        }
        let mut cs = self.crossings.clone();
        cs.sort();
        for c in cs {
            let s = if c.sign > 0 { "+" } else { "-" };
            writeln!(out, "crossing {s} {} {} {}", self.names[c.over], self.names[c.under_in], self.names[c.under_out])?;
        }
        let mut vs = self.vertices.clone();
        vs.sort();
        for v in vs {
            let e: Vec<String> = v
                .ends
                .iter()
                .map(|e| format!("{}:{}", self.names[e.arc], if e.head { "head" } else { "tail" }))
                .collect();
            writeln!(out, "vertex {}", e.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::r_tilde;

    const THETA: &str = "arc a\narc b\narc c\nvertex a:tail b:tail c:tail\nvertex a:head b:head c:head\n";

    fn brute(d: &GraphDiagram, f: &GFamilyTable) -> usize {
        let q = f.pair_count();
        let n = d.arc_count();
        let mut count = 0;
        for bits in d.bit_assignments() {
            for code in 0..q.pow(n as u32) {
                let mut k = code;
                let cols: Vec<Color> = (0..n)
                    .map(|_| {
                        let p = k % q;
                        k /= q;
                        (p / f.group().order(), p % f.group().order())
                    })
                    .collect();
                let c = Coloring { arc_colors: cols, orientations: bits.clone() };
                if d.check_coloring(f, &c).passed() {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn theta_curve_counts() {
        let d = parse_graph_diagram(THETA).unwrap();
        assert_eq!(d.edges().len(), 3);
        assert_eq!(coloring_count(&d, &GFamilyTable::trivial()), 8);
        let f = r_tilde();
        let all = enumerate_colorings(&d, &f);
        assert_eq!(all.len(), brute(&d, &f));
        for c in &all {
            assert!(c.arc_colors.iter().all(|x| x.0 == c.arc_colors[0].0));
            assert_eq!(c.arc_colors.iter().map(|x| x.1).sum::<usize>() % 2, 0);
        }
    }

    #[test]
    fn circle_has_twelve() {
        let d = parse_graph_diagram("arc o loop\n").unwrap();
        assert_eq!(coloring_count(&d, &r_tilde()), 12);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_graph_diagram("arc a\narc b\narc c\nvertex a:tail a:tail c:tail\n"),
            Err(DiagramError::DuplicateEnd { line: 4, .. })
        ));
        assert!(matches!(parse_graph_diagram("arc a\n"), Err(DiagramError::Dangling { .. })));
        assert!(matches!(
            parse_graph_diagram("arc a\narc b\nvertex a:tail b:tail\n"),
            Err(DiagramError::Arity { line: 3, got: 2 })
        ));
        assert!(matches!(parse_graph_diagram("arc a\ncrossing + z a a\n"), Err(DiagramError::UnknownArc { .. })));
    }

    #[test]
    fn serializer_round_trips() {
        let d = parse_graph_diagram(THETA).unwrap();
        let again = parse_graph_diagram(&d.to_string()).unwrap();
        assert_eq!(d.to_string(), again.to_string());
    }
}
