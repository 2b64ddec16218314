//! Movies: an initial still and a list of local events, with colouring
//! propagation, triple-point collection and the cocycle invariant.

use super::moves::{is_move, r3_form, Kind};
use super::still::{format_levels, parse_levels, Level, Partial, Still, StillColoring};
use crate::algebra::{pair_index, GFamilyTable};
use crate::diagrams::{enumerate_colorings, parse_graph_diagram, Color};
use crate::homology::CocycleTable;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MovieError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("event {index}: {reason}")]
    Event { index: usize, reason: String },
    #[error("designated still: {0}")]
    Seed(String),
    #[error("movie does not start and end with the empty diagram")]
    NotClosed,
    #[error("no colouring of the designated still extends past event {0}")]
    Propagation(usize),
}

/// One local move: the levels `old` starting at level index `at` are
/// replaced by `new`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub kind: Kind,
    pub at: usize,
    pub old: Vec<Level>,
    pub new: Vec<Level>,
}

impl Event {
    pub fn new(kind: Kind, at: usize, old: Vec<Level>, new: Vec<Level>) -> Self {
        Event { kind, at, old, new }
    }
    pub fn inverse(&self) -> Event {
        Event { kind: self.kind.reversed(), at: self.at, old: self.new.clone(), new: self.old.clone() }
    }

    /// Applies the event to a still, checking that the window matches and
    /// that the rewrite is a move of the stated kind.
    pub fn apply(&self, s: &Still) -> Result<Still, String> {
        let levels = s.levels();
        let end = self.at + self.old.len();
        if end > levels.len() {
            return Err(format!("window {}..{} outside a still of {} levels", self.at, end, levels.len()));
        }
        if levels[self.at..end] != self.old[..] {
            return Err(format!(
                "expected `{}` at level {}, found `{}`",
                format_levels(&self.old),
                self.at,
                format_levels(&levels[self.at..end])
            ));
        }
        if !is_move(self.kind, &self.old, &self.new) {
            return Err(format!(
                "`{}` -> `{}` is not a {} move",
                format_levels(&self.old),
                format_levels(&self.new),
                self.kind
            ));
        }
        let mut out = levels[..self.at].to_vec();
        out.extend_from_slice(&self.new);
        out.extend_from_slice(&levels[end..]);
        Still::new(s.base(), out).map_err(|e| e.to_string())
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.at)?;
        for l in &self.old {
            write!(f, " {l}")?;
        }
        f.write_str(" ->")?;
        for l in &self.new {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Designation {
    Seed,
    /// The still must match this graph file (relative to the movie).
    Ref(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Movie {
    pub initial: Vec<Level>,
    pub events: Vec<Event>,
    /// Index of the designated still: 0 is the initial still, k the still
    /// after event k-1.
    pub seed: Option<(usize, Designation)>,
}

pub fn parse_movie(text: &str) -> Result<Movie, MovieError> {
    let mut m = Movie::default();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let err = |msg: String| MovieError::Syntax { line, msg };
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let mut toks = body.split_whitespace();
        let head = toks.next().unwrap();
        match head {
            "initial" => {
                if !m.events.is_empty() || !m.initial.is_empty() {
                    return Err(err("`initial` must come first".into()));
                }
                m.initial = parse_levels(toks).map_err(|e| err(e.to_string()))?;
            }
            "still" => {
                if m.seed.is_some() {
                    return Err(err("only one still may be designated".into()));
                }
                let d = match (toks.next(), toks.next(), toks.next()) {
                    (Some("seed"), None, _) => Designation::Seed,
                    (Some("ref"), Some(p), None) => Designation::Ref(p.to_string()),
                    _ => return Err(err("expected `still seed` or `still ref <file>`".into())),
                };
                m.seed = Some((m.events.len(), d));
            }
            _ => {
                let kind = Kind::parse(head).ok_or_else(|| err(format!("unknown event `{head}`")))?;
                let at = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err("expected a level index".into()))?;
                let rest: Vec<&str> = toks.collect();
                let arrow = rest.iter().position(|&t| t == "->").ok_or_else(|| err("expected `->`".into()))?;
                let old = parse_levels(rest[..arrow].iter().copied()).map_err(|e| err(e.to_string()))?;
                let new = parse_levels(rest[arrow + 1..].iter().copied()).map_err(|e| err(e.to_string()))?;
                m.events.push(Event { kind, at, old, new });
            }
        }
    }
    Ok(m)
}

impl fmt::Display for Movie {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.initial.is_empty() {
            writeln!(f, "initial {}", format_levels(&self.initial))?;
        }
        let mark = |f: &mut fmt::Formatter<'_>, k: usize| match &self.seed {
            Some((i, Designation::Seed)) if *i == k => writeln!(f, "still seed"),
            Some((i, Designation::Ref(p))) if *i == k => writeln!(f, "still ref {p}"),
            _ => Ok(()),
        };
        mark(f, 0)?;
        for (k, e) in self.events.iter().enumerate() {
            writeln!(f, "{e}")?;
            mark(f, k + 1)?;
        }
        Ok(())
    }
}

/// Replays the movie, returning every still.
pub fn validate_movie(m: &Movie) -> Result<Vec<Still>, MovieError> {
    let first = Still::closed(m.initial.clone()).map_err(|e| MovieError::Syntax { line: 0, msg: e.to_string() })?;
    let mut stills = vec![first];
    for (index, e) in m.events.iter().enumerate() {
        let next = e.apply(stills.last().unwrap()).map_err(|reason| MovieError::Event { index, reason })?;
        stills.push(next);
    }
    if let Some((i, _)) = m.seed {
        if i >= stills.len() {
            return Err(MovieError::Seed(format!("index {i} past the last still")));
        }
    }
    Ok(stills)
}

/// Checks a `still ref` designation against the graph file it names.
pub fn check_reference(m: &Movie, stills: &[Still], dir: &Path) -> Result<(), MovieError> {
    let Some((i, Designation::Ref(p))) = &m.seed else { return Ok(()) };
    let text = std::fs::read_to_string(dir.join(p)).map_err(|e| MovieError::Seed(format!("{p}: {e}")))?;
    let g = parse_graph_diagram(&text).map_err(|e| MovieError::Seed(format!("{p}: {e}")))?;
    let want = g.to_string();
    let s = &stills[*i];
    if s.layout().diagram.to_string() == want || first_component(s).is_some_and(|c| c.layout().diagram.to_string() == want) {
        return Ok(());
    }
    Err(MovieError::Seed(format!("still {i} does not match {p}")))
}

/// The shortest nonempty prefix of a closed still that is itself closed.
pub fn first_component(s: &Still) -> Option<Still> {
    let k = s.widths().iter().skip(1).position(|&w| w == 0)?;
    Still::closed(s.levels()[..=k].to_vec()).ok()
}

/// Reads, validates and checks a movie file.
pub fn load_movie(path: &Path) -> Result<(Movie, Vec<Still>), MovieError> {
    let text = std::fs::read_to_string(path).map_err(|e| MovieError::Syntax { line: 0, msg: e.to_string() })?;
    let m = parse_movie(&text)?;
    let stills = validate_movie(&m)?;
    check_reference(&m, &stills, path.parent().unwrap_or(Path::new(".")))?;
    Ok((m, stills))
}

/// The designated still, or the one with the most slots.
pub fn seed_index(m: &Movie, stills: &[Still]) -> usize {
    match m.seed {
        Some((i, _)) => i,
        None => (0..stills.len()).max_by_key(|&i| (stills[i].slot_count(), std::cmp::Reverse(i))).unwrap(),
    }
}

/// Every colouring of `to` agreeing with `c` outside the window of an event
/// that turns `from` into `to`.
fn transfer(f: &GFamilyTable, from: &Still, to: &Still, e: &Event, c: &StillColoring) -> Vec<StillColoring> {
    let (at, k, m) = (e.at, e.old.len(), e.new.len());
    let mut p = Partial::unknown(to.slot_count());
    for l in 0..from.widths().len() {
        let mut targets = Vec::with_capacity(2);
        if l <= at {
            targets.push(l);
        }
        if l >= at + k {
            targets.push(l - k + m);
        }
        for t in targets {
            for q in 0..from.widths()[l] {
                let (col, side) = c[from.slot(l, q)];
                let s = to.slot(t, q);
                if p.color[s].is_some_and(|x| x != col) || p.side[s].is_some_and(|x| x != side) {
                    return vec![];
                }
                p.color[s] = Some(col);
                p.side[s] = Some(side);
            }
        }
    }
    let free: Vec<usize> =
        (at + 1..at + m).flat_map(|l| (0..to.widths()[l]).map(move |q| (l, q))).map(|(l, q)| to.slot(l, q)).collect();
    let mut out = Vec::new();
    to.complete(f, p, at, at + m, &free, &mut out);
    out
}

/// A signed triple point with the colours of its bottom (source region),
/// middle and top sheets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TriplePoint {
    pub event: usize,
    pub sign: i8,
    pub bottom: Color,
    pub middle: Color,
    pub top: Color,
}

impl TriplePoint {
    pub fn value(&self, f: &GFamilyTable, theta: &CocycleTable) -> u32 {
        let ix = |c: Color| pair_index(f, c.0, c.1);
        let v = theta.theta.get(ix(self.bottom), ix(self.middle), ix(self.top)) % theta.modulus;
        if self.sign > 0 {
            v
        } else {
            (theta.modulus - v) % theta.modulus
        }
    }
}

/// The triple point of an R3 event from the colourings before and after it.
pub fn triple_point(event: usize, e: &Event, before: (&Still, &StillColoring), after: (&Still, &StillColoring)) -> TriplePoint {
    let (i, lhs_old, [ab, ac, bc]) = r3_form(&e.old, &e.new).expect("validated r3 event");
    let v: i32 = if lhs_old { 1 } else { -1 };
    // strands a, b, c start at i, i+1, i+2; rank counts the strands below
    let rank = [ab as u8 + ac as u8, !ab as u8 + bc as u8, !ac as u8 + !bc as u8];
    let by_rank = |r: u8| (0..3).find(|&k| rank[k] == r).unwrap();
    let (bot, mid, top) = (by_rank(0), by_rank(1), by_rank(2));
    let (s0, c0) = before;
    let side = |k: usize| c0[s0.slot(e.at, i + k)].1 as i32;
    let normal = |k: usize| -> [i32; 3] {
        let s = side(k);
        match k {
            0 => [s, -s, 0],
            1 => [s, 0, -s * v],
            _ => [s, s, 0],
        }
    };
    let dot = |n: [i32; 3], p: [f64; 3]| n[0] as f64 * p[0] + n[1] as f64 * p[1] + n[2] as f64 * p[2];
    // pieces of strand k in a still at time tau: sample point and colour
    let pieces = |k: usize, tau: f64, (s, c): (&Still, &StillColoring)| -> Vec<([f64; 3], Color)> {
        let xm = v as f64 * tau;
        let x_at = |y: f64| match k {
            0 => y,
            1 => xm,
            _ => -y,
        };
        let height = |p: usize, q: usize| match (p.min(q), p.max(q)) {
            (0, 1) => xm,
            (0, 2) => 0.0,
            _ => -xm,
        };
        let mut hs: Vec<f64> = (0..3).filter(|&o| o != k).map(|o| height(k, o)).collect();
        hs.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let mut order = [0usize, 1, 2];
        let mut pos_at = vec![i + k];
        for l in &s.levels()[e.at..e.at + 3] {
            order.swap(l.pos() - i, l.pos() - i + 1);
            pos_at.push(i + order.iter().position(|&o| o == k).unwrap());
        }
        let layer = |y: f64| ((y + 1.0).round() as usize).min(2);
        [(hs[0] - 0.5, 0), ((hs[0] + hs[1]) / 2.0, layer(hs[0]) + 1), (hs[1] + 0.5, 3)]
            .into_iter()
            .map(|(y, m)| ([x_at(y), y, tau], c[s.slot(e.at + m, pos_at[m])].0))
            .collect()
    };
    let all = |k: usize| {
        let mut v = pieces(k, -1.0, before);
        v.extend(pieces(k, 1.0, after));
        v
    };
    let (nm, nt, nb) = (normal(mid), normal(top), normal(bot));
    let bottom = all(bot).into_iter().find(|(p, _)| dot(nm, *p) < 0.0 && dot(nt, *p) < 0.0).unwrap().1;
    let middle = all(mid).into_iter().find(|(p, _)| dot(nt, *p) < 0.0).unwrap().1;
    let top_c = c0[s0.slot(e.at, i + top)].0;
    let det = nt[0] * (nm[1] * nb[2] - nm[2] * nb[1]) - nt[1] * (nm[0] * nb[2] - nm[2] * nb[0])
        + nt[2] * (nm[0] * nb[1] - nm[1] * nb[0]);
    TriplePoint { event, sign: det.signum() as i8, bottom, middle, top: top_c }
}

/// Colourings of every still of the movie.
pub type FoamColoring = Vec<StillColoring>;

/// All foam colourings extending a colouring of still `seed`.
pub fn propagate_coloring(
    f: &GFamilyTable,
    m: &Movie,
    stills: &[Still],
    seed: usize,
    c0: &StillColoring,
) -> Result<Vec<FoamColoring>, MovieError> {
    if !stills[seed].check(f, c0) {
        return Err(MovieError::Seed("the seed is not a colouring of the designated still".into()));
    }
    let mut worst = seed;
    let mut down: Vec<Vec<StillColoring>> = vec![vec![]];
    let mut stack = vec![(seed, vec![c0.clone()])];
    // backward: paths from the seed to still 0, stored top-down
    while let Some((k, path)) = stack.pop() {
        if k == 0 {
            down.push(path);
            continue;
        }
        let e = m.events[k - 1].inverse();
        let nexts = transfer(f, &stills[k], &stills[k - 1], &e, path.last().unwrap());
        if nexts.is_empty() {
            worst = worst.min(k - 1);
        }
        for c in nexts {
            let mut p = path.clone();
            p.push(c);
            stack.push((k - 1, p));
        }
    }
    down.remove(0);
    let mut up = Vec::new();
    let mut stack = vec![(seed, vec![c0.clone()])];
    let mut worst_up = seed;
    while let Some((k, path)) = stack.pop() {
        if k + 1 == stills.len() {
            up.push(path);
            continue;
        }
        let nexts = transfer(f, &stills[k], &stills[k + 1], &m.events[k], path.last().unwrap());
        if nexts.is_empty() {
            worst_up = worst_up.max(k);
        }
        for c in nexts {
            let mut p = path.clone();
            p.push(c);
            stack.push((k + 1, p));
        }
    }
    if down.is_empty() {
        return Err(MovieError::Propagation(worst));
    }
    if up.is_empty() {
        return Err(MovieError::Propagation(worst_up));
    }
    let mut out = Vec::new();
    for d in &down {
        for u in &up {
            let mut fc: FoamColoring = d.iter().rev().cloned().collect();
            fc.extend(u[1..].iter().cloned());
            out.push(fc);
        }
    }
    Ok(out)
}

/// The same foam with every transverse orientation reversed.
pub fn reverse_orientation(f: &GFamilyTable, fc: &FoamColoring) -> FoamColoring {
    let inv = |g: usize| f.group().inv(g);
    fc.iter().map(|sc| sc.iter().map(|&((a, g), s)| ((a, inv(g)), -s)).collect()).collect()
}

/// Inserts a cancelling pair of crossings `cross(pos) cross(pos, flipped)`
/// at layer `layer` of still `from`, carried unchanged until still `to`
/// where it is removed again. Fails if an event in between touches the
/// layer.
pub fn with_r2_pair(m: &Movie, from: usize, to: usize, layer: usize, pos: usize, side: super::still::Side) -> Result<Movie, MovieError> {
    let pair = vec![Level::Cross(pos, side), Level::Cross(pos, side.flip())];
    let mut events = m.events[..from].to_vec();
    events.push(Event::new(Kind::R2, layer, vec![], pair.clone()));
    let mut j = layer;
    for (index, e) in m.events[from..to].iter().enumerate() {
        let mut e = e.clone();
        if e.at + e.old.len() <= j && !(e.old.is_empty() && e.at == j) {
            j = j + e.new.len() - e.old.len();
        } else if e.at >= j {
            e.at += 2;
        } else {
            return Err(MovieError::Event { index: from + index, reason: "event overlaps the inserted pair".into() });
        }
        events.push(e);
    }
    events.push(Event::new(Kind::R2, j, pair, vec![]));
    events.extend(m.events[to..].iter().cloned());
    let seed = m.seed.clone().map(|(i, d)| {
        let shift = usize::from(i > from) + usize::from(i > to);
        (i + shift, d)
    });
    Ok(Movie { initial: m.initial.clone(), events, seed })
}

/// One record per R3 event.
pub fn collect_triple_points(m: &Movie, stills: &[Still], fc: &FoamColoring) -> Vec<TriplePoint> {
    m.events
        .iter()
        .enumerate()
        .filter(|(_, e)| e.kind == Kind::R3)
        .map(|(k, e)| triple_point(k, e, (&stills[k], &fc[k]), (&stills[k + 1], &fc[k + 1])))
        .collect()
}

/// Events where an edge passes a vertex. Their cocycle values are zero for
/// every shipped table; they are reported so traces stay complete.
pub fn vertex_events(m: &Movie) -> Vec<usize> {
    m.events.iter().enumerate().filter(|(_, e)| e.kind == Kind::Iv).map(|(k, _)| k).collect()
}

/// Multiset of values in Z_modulus, stored as counts per value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantMultiset {
    pub modulus: u32,
    pub counts: Vec<u64>,
}

impl InvariantMultiset {
    pub fn new(modulus: u32) -> Self {
        InvariantMultiset { modulus, counts: vec![0; modulus as usize] }
    }
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
    pub fn add(&mut self, other: &InvariantMultiset) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }
    /// The multiset under v -> -v.
    pub fn negated(&self) -> Self {
        let n = self.modulus as usize;
        let mut out = InvariantMultiset::new(self.modulus);
        for v in 0..n {
            out.counts[(n - v) % n] += self.counts[v];
        }
        out
    }
}

impl fmt::Display for InvariantMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.counts[0])?;
        for (p, &c) in self.counts.iter().enumerate().skip(1) {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 { String::new() } else { c.to_string() };
            match p {
                1 => write!(f, " + {coeff}t")?,
                _ => write!(f, " + {coeff}t^{p}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub multiset: InvariantMultiset,
    pub polynomial: String,
    /// Colourings of the designated still.
    pub seeds: usize,
    /// Seeds with no extension to the whole foam.
    pub unextendable: usize,
}

/// Values of every path from the seed to one end of the movie.
fn end_values(
    f: &GFamilyTable,
    theta: &CocycleTable,
    m: &Movie,
    stills: &[Still],
    seed: usize,
    c0: &StillColoring,
    forward: bool,
) -> Vec<u64> {
    let q = theta.modulus;
    let mut counts = vec![0u64; q as usize];
    let mut stack = vec![(seed, c0.clone(), 0u32)];
    while let Some((k, c, val)) = stack.pop() {
        let done = if forward { k + 1 == stills.len() } else { k == 0 };
        if done {
            counts[val as usize] += 1;
            continue;
        }
        let (ei, to) = if forward { (k, k + 1) } else { (k - 1, k - 1) };
        let e = &m.events[ei];
        let step = if forward { e.clone() } else { e.inverse() };
        for n in transfer(f, &stills[k], &stills[to], &step, &c) {
            let mut val = val;
            if e.kind == Kind::R3 {
                let tp = if forward {
                    triple_point(ei, e, (&stills[k], &c), (&stills[to], &n))
                } else {
                    triple_point(ei, e, (&stills[to], &n), (&stills[k], &c))
                };
                val = (val + tp.value(f, theta)) % q;
            }
            stack.push((to, n, val));
        }
    }
    counts
}

/// Enumerates foam colourings from the designated still and tallies the
/// signed sums of triple-point values.
pub fn cocycle_invariant(
    m: &Movie,
    stills: &[Still],
    f: &GFamilyTable,
    theta: &CocycleTable,
) -> Result<InvariantReport, MovieError> {
    if !stills[0].levels().is_empty() || !stills.last().unwrap().levels().is_empty() {
        return Err(MovieError::NotClosed);
    }
    let seed = seed_index(m, stills);
    let lay = stills[seed].layout();
    let seeds: Vec<StillColoring> = enumerate_colorings(&lay.diagram, f).iter().map(|c| lay.to_still(c)).collect();
    let q = theta.modulus as usize;
    let per_seed: Vec<Option<Vec<u64>>> = seeds
        .par_iter()
        .map(|c0| {
            let down = end_values(f, theta, m, stills, seed, c0, false);
            if down.iter().all(|&x| x == 0) {
                return None;
            }
            let up = end_values(f, theta, m, stills, seed, c0, true);
            if up.iter().all(|&x| x == 0) {
                return None;
            }
            let mut out = vec![0u64; q];
            for (a, &x) in down.iter().enumerate() {
                for (b, &y) in up.iter().enumerate() {
                    out[(a + b) % q] += x * y;
                }
            }
            Some(out)
        })
        .collect();
    let mut multiset = InvariantMultiset::new(theta.modulus);
    let mut unextendable = 0;
    for r in &per_seed {
        match r {
            Some(c) => multiset.add(&InvariantMultiset { modulus: theta.modulus, counts: c.clone() }),
            None => unextendable += 1,
        }
    }
    Ok(InvariantReport { polynomial: multiset.to_string(), multiset, seeds: seeds.len(), unextendable })
}

fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf29ce484222325, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

#[derive(Serialize)]
#[serde(tag = "record", rename_all = "snake_case")]
enum TraceRecord<'a> {
    Event { index: usize, kind: &'a str, still: String },
    Vertex { coloring: usize, event: usize, value: u32 },
    Triple { coloring: usize, event: usize, sign: i8, bottom: Color, middle: Color, top: Color, value: u32 },
    Total { coloring: usize, value: u32 },
}

/// JSON lines: one record per event with the hash of the still it
/// produces, then the multiple points and total of every foam colouring.
pub fn trace(
    m: &Movie,
    stills: &[Still],
    f: &GFamilyTable,
    theta: &CocycleTable,
    out: &mut impl std::io::Write,
) -> Result<(), MovieError> {
    let io = |e: std::io::Error| MovieError::Seed(e.to_string());
    let mut line = |r: &TraceRecord| writeln!(out, "{}", serde_json::to_string(r).unwrap()).map_err(io);
    for (k, e) in m.events.iter().enumerate() {
        let h = format!("{:016x}", fnv(&stills[k + 1].to_string()));
        line(&TraceRecord::Event { index: k, kind: e.kind.name(), still: h })?;
    }
    let seed = seed_index(m, stills);
    let lay = stills[seed].layout();
    let vertex = vertex_events(m);
    let mut n = 0;
    for c in enumerate_colorings(&lay.diagram, f) {
        let Ok(fcs) = propagate_coloring(f, m, stills, seed, &lay.to_still(&c)) else { continue };
        for fc in fcs {
            let mut total = 0;
            for &event in &vertex {
                line(&TraceRecord::Vertex { coloring: n, event, value: 0 })?;
            }
            for tp in collect_triple_points(m, stills, &fc) {
                let value = tp.value(f, theta);
                total = (total + value) % theta.modulus;
                line(&TraceRecord::Triple {
                    coloring: n,
                    event: tp.event,
                    sign: tp.sign,
                    bottom: tp.bottom,
                    middle: tp.middle,
                    top: tp.top,
                    value,
                })?;
            }
            line(&TraceRecord::Total { coloring: n, value: total })?;
            n += 1;
        }
    }
    Ok(())
}

/// Counts foam colourings by value, without the parallel path. Used to
/// cross-check `cocycle_invariant`.
pub fn invariant_by_enumeration(
    m: &Movie,
    stills: &[Still],
    f: &GFamilyTable,
    theta: &CocycleTable,
) -> InvariantMultiset {
    let seed = seed_index(m, stills);
    let lay = stills[seed].layout();
    let mut out = InvariantMultiset::new(theta.modulus);
    for c in enumerate_colorings(&lay.diagram, f) {
        let Ok(fcs) = propagate_coloring(f, m, stills, seed, &lay.to_still(&c)) else { continue };
        for fc in fcs {
            let v = collect_triple_points(m, stills, &fc).iter().fold(0, |acc, tp| (acc + tp.value(f, theta)) % theta.modulus);
            out.counts[v as usize] += 1;
        }
    }
    out
}

/// Tally helper for tests and reports.
pub fn tally<I: IntoIterator<Item = u32>>(modulus: u32, values: I) -> BTreeMap<u32, u64> {
    let mut m = BTreeMap::new();
    for v in values {
        *m.entry(v % modulus).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::r_tilde;

    const SPHERE: &str = "birth 0 -> cup0 cap0\nstill seed\ndeath 0 cup0 cap0 ->\n";

    #[test]
    fn sphere_movie() {
        let m = parse_movie(SPHERE).unwrap();
        let stills = validate_movie(&m).unwrap();
        assert_eq!(stills.len(), 3);
        let f = r_tilde();
        let r = cocycle_invariant(&m, &stills, &f, &CocycleTable::mochizuki()).unwrap();
        assert_eq!(r.polynomial, "12");
        assert_eq!(r.unextendable, 0);
        assert_eq!(parse_movie(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn empty_movie_is_valid() {
        let m = parse_movie("# nothing\n").unwrap();
        assert_eq!(validate_movie(&m).unwrap().len(), 1);
    }

    #[test]
    fn r3_on_two_crossings_fails() {
        let text = "birth 0 -> cup0 cap0\nbirth 1 -> cup0 cap0\nr2 2 -> lx1 rx1\nr3 2 lx1 rx1 cap0 -> lx0 lx1 lx0\n";
        let m = parse_movie(text).unwrap();
        match validate_movie(&m) {
            Err(MovieError::Event { index: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        assert!(matches!(parse_movie("\nbogus 0 ->"), Err(MovieError::Syntax { line: 2, .. })));
        assert!(matches!(parse_movie("r2 x ->"), Err(MovieError::Syntax { line: 1, .. })));
    }

    #[test]
    fn polynomial_rendering() {
        let m = InvariantMultiset { modulus: 3, counts: vec![60, 12, 12] };
        assert_eq!(m.to_string(), "60 + 12t + 12t^2");
        let m = InvariantMultiset { modulus: 3, counts: vec![0, 0, 1] };
        assert_eq!(m.to_string(), "0 + t^2");
        assert_eq!(InvariantMultiset { modulus: 3, counts: vec![5, 1, 2] }.negated().counts, vec![5, 2, 1]);
    }
}
