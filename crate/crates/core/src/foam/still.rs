//! Stills as Morse words: a diagram is read bottom to top as a stack of
//! levels, each acting on a few adjacent strand positions.
//!
//! Positions are counted from the left in the layer below a level. A
//! crossing `lx<i>` carries the strand at position `i` up to `i+1` over the
//! strand going from `i+1` to `i`; in `rx<i>` that second strand is the one
//! on top. Every strand piece carries a colour and a normal side, `+1` when
//! the normal points to the right of the page.

use crate::algebra::GFamilyTable;
use crate::diagrams::{Color, Coloring, Crossing, End, GraphDiagram, Vertex};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Cup(usize),
    Cap(usize),
    Cross(usize, Side),
    Merge(usize),
    Split(usize),
}

impl Level {
    pub fn pos(self) -> usize {
        match self {
            Level::Cup(i) | Level::Cap(i) | Level::Cross(i, _) | Level::Merge(i) | Level::Split(i) => i,
        }
    }
    /// Strands consumed from the layer below and produced in the layer above.
    pub fn arity(self) -> (usize, usize) {
        match self {
            Level::Cup(_) => (0, 2),
            Level::Cap(_) => (2, 0),
            Level::Cross(..) => (2, 2),
            Level::Merge(_) => (2, 1),
            Level::Split(_) => (1, 2),
        }
    }
    pub fn with_pos(self, i: usize) -> Level {
        match self {
            Level::Cup(_) => Level::Cup(i),
            Level::Cap(_) => Level::Cap(i),
            Level::Cross(_, s) => Level::Cross(i, s),
            Level::Merge(_) => Level::Merge(i),
            Level::Split(_) => Level::Split(i),
        }
    }
    pub fn shifted(self, d: usize) -> Level {
        self.with_pos(self.pos() + d)
    }
    /// Reflection across a vertical line, for a level whose input layer has
    /// `w` strands.
    pub fn mirrored(self, w: usize) -> Level {
        match self {
            Level::Cup(i) => Level::Cup(w - i),
            Level::Cap(i) => Level::Cap(w - 2 - i),
            Level::Cross(i, s) => Level::Cross(w - 2 - i, s.flip()),
            Level::Merge(i) => Level::Merge(w - 2 - i),
            Level::Split(i) => Level::Split(w - 1 - i),
        }
    }
    /// Reflection across a horizontal line.
    pub fn flipped(self) -> Level {
        match self {
            Level::Cup(i) => Level::Cap(i),
            Level::Cap(i) => Level::Cup(i),
            Level::Cross(i, s) => Level::Cross(i, s.flip()),
            Level::Merge(i) => Level::Split(i),
            Level::Split(i) => Level::Merge(i),
        }
    }
    pub fn crossing_changed(self) -> Level {
        match self {
            Level::Cross(i, s) => Level::Cross(i, s.flip()),
            l => l,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Cup(i) => write!(f, "cup{i}"),
            Level::Cap(i) => write!(f, "cap{i}"),
            Level::Cross(i, Side::Left) => write!(f, "lx{i}"),
            Level::Cross(i, Side::Right) => write!(f, "rx{i}"),
            Level::Merge(i) => write!(f, "merge{i}"),
            Level::Split(i) => write!(f, "split{i}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StillError {
    #[error("bad level token '{0}'")]
    Token(String),
    #[error("level {index} ({level}) does not fit a layer of {width} strands")]
    Width { index: usize, level: Level, width: usize },
    #[error("still ends with {0} open strands")]
    Open(usize),
}

pub fn parse_level(tok: &str) -> Result<Level, StillError> {
    let split = tok.find(|c: char| c.is_ascii_digit()).ok_or_else(|| StillError::Token(tok.into()))?;
    let (head, num) = tok.split_at(split);
    let i: usize = num.parse().map_err(|_| StillError::Token(tok.into()))?;
    Ok(match head {
        "cup" => Level::Cup(i),
        "cap" => Level::Cap(i),
        "lx" => Level::Cross(i, Side::Left),
        "rx" => Level::Cross(i, Side::Right),
        "merge" => Level::Merge(i),
        "split" => Level::Split(i),
        _ => return Err(StillError::Token(tok.into())),
    })
}

pub fn parse_levels<'a>(toks: impl IntoIterator<Item = &'a str>) -> Result<Vec<Level>, StillError> {
    toks.into_iter().map(parse_level).collect()
}

pub fn format_levels(levels: &[Level]) -> String {
    levels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

/// Layer widths for a word starting from `base` strands.
pub fn layer_widths(base: usize, levels: &[Level]) -> Result<Vec<usize>, StillError> {
    let mut w = vec![base];
    for (index, &level) in levels.iter().enumerate() {
        let cur = *w.last().unwrap();
        let (k, m) = level.arity();
        let fits = match level {
            Level::Cup(i) => i <= cur,
            _ => level.pos() + k <= cur,
        };
        if !fits {
            return Err(StillError::Width { index, level, width: cur });
        }
        w.push(cur - k + m);
    }
    Ok(w)
}

/// A Morse word together with its layer bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Still {
    base: usize,
    levels: Vec<Level>,
    widths: Vec<usize>,
    offsets: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    Below,
    Above,
}

/// Where a strand piece goes when it leaves a slot through one side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Link {
    /// Continue into another slot, entering it from the given side.
    Slot(usize, Dir),
    /// Reached the lower under-end of the crossing at this level.
    UnderIn(usize),
    /// Reached the upper under-end of the crossing at this level.
    UnderOut(usize),
    /// Reached a vertex at this level, in the given slot role.
    Vertex(usize, usize),
    Boundary,
}

impl Still {
    pub fn new(base: usize, levels: Vec<Level>) -> Result<Self, StillError> {
        let widths = layer_widths(base, &levels)?;
        let mut offsets = Vec::with_capacity(widths.len() + 1);
        let mut acc = 0;
        for &w in &widths {
            offsets.push(acc);
            acc += w;
        }
        offsets.push(acc);
        Ok(Still { base, levels, widths, offsets })
    }
    /// A still of a closed diagram.
    pub fn closed(levels: Vec<Level>) -> Result<Self, StillError> {
        let s = Still::new(0, levels)?;
        match s.top_width() {
            0 => Ok(s),
            w => Err(StillError::Open(w)),
        }
    }
    pub fn empty() -> Self {
        Still::new(0, vec![]).unwrap()
    }
    pub fn base(&self) -> usize {
        self.base
    }
    pub fn levels(&self) -> &[Level] {
        &self.levels
    }
    pub fn widths(&self) -> &[usize] {
        &self.widths
    }
    pub fn top_width(&self) -> usize {
        *self.widths.last().unwrap()
    }
    pub fn slot_count(&self) -> usize {
        *self.offsets.last().unwrap()
    }
    pub fn slot(&self, layer: usize, pos: usize) -> usize {
        debug_assert!(pos < self.widths[layer]);
        self.offsets[layer] + pos
    }
    pub fn layer_of(&self, slot: usize) -> (usize, usize) {
        let layer = self.offsets.partition_point(|&o| o <= slot) - 1;
        (layer, slot - self.offsets[layer])
    }
    pub fn crossing_count(&self) -> usize {
        self.levels.iter().filter(|l| matches!(l, Level::Cross(..))).count()
    }

    /// Follows the strand out of slot `(layer, p)` through side `side`.
    pub fn link(&self, layer: usize, p: usize, side: Dir) -> Link {
        match side {
            Dir::Above => {
                let Some(&level) = self.levels.get(layer) else { return Link::Boundary };
                let (i, (k, m)) = (level.pos(), level.arity());
                if p < i {
                    return Link::Slot(self.slot(layer + 1, p), Dir::Below);
                }
                if p >= i + k {
                    return Link::Slot(self.slot(layer + 1, p + m - k), Dir::Below);
                }
                match level {
                    Level::Cap(_) => Link::Slot(self.slot(layer, if p == i { i + 1 } else { i }), Dir::Above),
                    Level::Cross(_, s) => {
                        let over = if s == Side::Left { i } else { i + 1 };
                        if p == over {
                            Link::Slot(self.slot(layer + 1, if p == i { i + 1 } else { i }), Dir::Below)
                        } else {
                            Link::UnderIn(layer)
                        }
                    }
                    Level::Merge(_) => Link::Vertex(layer, p - i),
                    Level::Split(_) => Link::Vertex(layer, 0),
                    Level::Cup(_) => unreachable!(),
                }
            }
            Dir::Below => {
                if layer == 0 {
                    return Link::Boundary;
                }
                let level = self.levels[layer - 1];
                let (i, (k, m)) = (level.pos(), level.arity());
                if p < i {
                    return Link::Slot(self.slot(layer - 1, p), Dir::Above);
                }
                if p >= i + m {
                    return Link::Slot(self.slot(layer - 1, p + k - m), Dir::Above);
                }
                match level {
                    Level::Cup(_) => Link::Slot(self.slot(layer, if p == i { i + 1 } else { i }), Dir::Below),
                    Level::Cross(_, s) => {
                        // the over strand ends at i+1 for lx and at i for rx
                        let over_top = if s == Side::Left { i + 1 } else { i };
                        if p == over_top {
                            Link::Slot(self.slot(layer - 1, if p == i { i + 1 } else { i }), Dir::Above)
                        } else {
                            Link::UnderOut(layer - 1)
                        }
                    }
                    Level::Merge(_) => Link::Vertex(layer - 1, 2),
                    Level::Split(_) => Link::Vertex(layer - 1, 1 + p - i),
                    Level::Cap(_) => unreachable!(),
                }
            }
        }
    }

    /// Slot and entry side for each role at the vertex on level `j`.
    fn vertex_slots(&self, j: usize) -> [(usize, Dir); 3] {
        match self.levels[j] {
            Level::Merge(i) => [
                (self.slot(j, i), Dir::Above),
                (self.slot(j, i + 1), Dir::Above),
                (self.slot(j + 1, i), Dir::Below),
            ],
            Level::Split(i) => [
                (self.slot(j, i), Dir::Above),
                (self.slot(j + 1, i), Dir::Below),
                (self.slot(j + 1, i + 1), Dir::Below),
            ],
            _ => unreachable!(),
        }
    }

    /// Under-crossing slots (bottom, top) and over slot (bottom) of the
    /// crossing on level `j`.
    fn crossing_slots(&self, j: usize) -> (usize, usize, usize) {
        match self.levels[j] {
            Level::Cross(i, Side::Left) => (self.slot(j, i + 1), self.slot(j + 1, i), self.slot(j, i)),
            Level::Cross(i, Side::Right) => (self.slot(j, i), self.slot(j + 1, i + 1), self.slot(j, i + 1)),
            _ => unreachable!(),
        }
    }

    /// Converts a closed still to a graph diagram, with arcs named `a0`,
    /// `a1`, ... in discovery order.
    pub fn layout(&self) -> Layout {
        assert_eq!((self.base, self.top_width()), (0, 0), "only closed stills convert");
        let n = self.slot_count();
        let mut arc_of = vec![usize::MAX; n];
        let mut up = vec![false; n];
        let mut loops: Vec<bool> = Vec::new();
        let mut cross: Vec<Option<(usize, usize, bool)>> = vec![None; self.levels.len()];
        let mut vend: Vec<[Option<End>; 3]> = vec![[None; 3]; self.levels.len()];

        // Walks from a slot until the piece ends; returns the link that ended it.
        let walk = |start: usize, from: Dir, arc: usize, arc_of: &mut Vec<usize>, up: &mut Vec<bool>| {
            let (mut s, mut from) = (start, from);
            loop {
                if arc_of[s] != usize::MAX {
                    return None;
                }
                arc_of[s] = arc;
                up[s] = from == Dir::Below;
                let (l, p) = self.layer_of(s);
                let out = if from == Dir::Below { Dir::Above } else { Dir::Below };
                match self.link(l, p, out) {
                    Link::Slot(t, d) => {
                        s = t;
                        from = d;
                    }
                    other => return Some(other),
                }
            }
        };

        fn new_arc(loops: &mut Vec<bool>, is_loop: bool) -> usize {
            loops.push(is_loop);
            loops.len() - 1
        }

        // Continues an edge through under-crossings until it meets a vertex
        // or closes up; `first` is the arc that opened this edge walk.
        let follow = |mut s: usize,
                          mut from: Dir,
                          mut arc: usize,
                          first: usize,
                          arc_of: &mut Vec<usize>,
                          up: &mut Vec<bool>,
                          loops: &mut Vec<bool>,
                          cross: &mut Vec<Option<(usize, usize, bool)>>,
                          vend: &mut Vec<[Option<End>; 3]>| {
            loop {
                match walk(s, from, arc, arc_of, up) {
                    Some(Link::UnderIn(j)) | Some(Link::UnderOut(j)) => {
                        let (bot, top, _) = self.crossing_slots(j);
                        let going_up = arc_of[bot] == arc && up[bot];
                        let (next, enter) = if going_up { (top, Dir::Below) } else { (bot, Dir::Above) };
                        if arc_of[next] != usize::MAX {
                            // closed a vertex-free component
                            cross[j] = Some((arc, first, going_up));
                            return;
                        }
                        let nxt = new_arc(loops, false);
                        cross[j] = Some((arc, nxt, going_up));
                        s = next;
                        from = enter;
                        arc = nxt;
                    }
                    Some(Link::Vertex(j, role)) => {
                        vend[j][role] = Some(End { arc, head: true });
                        return;
                    }
                    Some(Link::Boundary) => unreachable!(),
                    Some(Link::Slot(..)) => unreachable!(),
                    None => return,
                }
            }
        };

        for j in 0..self.levels.len() {
            if !matches!(self.levels[j], Level::Merge(_) | Level::Split(_)) {
                continue;
            }
            for (role, (s, from)) in self.vertex_slots(j).into_iter().enumerate() {
                if arc_of[s] != usize::MAX {
                    continue;
                }
                let a = new_arc(&mut loops, false);
                vend[j][role] = Some(End { arc: a, head: false });
                follow(s, from, a, a, &mut arc_of, &mut up, &mut loops, &mut cross, &mut vend);
            }
        }
        for j in 0..self.levels.len() {
            if !matches!(self.levels[j], Level::Cross(..)) || cross[j].is_some() {
                continue;
            }
            let (_, top, _) = self.crossing_slots(j);
            if arc_of[top] != usize::MAX {
                continue;
            }
            let a = new_arc(&mut loops, false);
            follow(top, Dir::Below, a, a, &mut arc_of, &mut up, &mut loops, &mut cross, &mut vend);
        }
        for s in 0..n {
            if arc_of[s] == usize::MAX {
                let a = new_arc(&mut loops, true);
                walk(s, Dir::Below, a, &mut arc_of, &mut up);
            }
        }
        let narcs = loops.len();
        let mut crossings = Vec::new();
        for (j, c) in cross.iter().enumerate() {
            let Some((under_in, under_out, going_up)) = *c else { continue };
            let (_, _, over_slot) = self.crossing_slots(j);
            let Level::Cross(_, side) = self.levels[j] else { unreachable!() };
            let u = if going_up { 1 } else { -1 };
            let o = if up[over_slot] { 1 } else { -1 };
            let sign = if side == Side::Left { o * u } else { -o * u };
            crossings.push(Crossing { sign, over: arc_of[over_slot], under_in, under_out });
        }
        let vertices: Vec<Vertex> = vend
            .iter()
            .enumerate()
            .filter(|(j, _)| matches!(self.levels[*j], Level::Merge(_) | Level::Split(_)))
            .map(|(_, e)| Vertex { ends: [e[0].unwrap(), e[1].unwrap(), e[2].unwrap()] })
            .collect();
        let names = (0..narcs).map(|a| format!("a{a}")).collect();
        let diagram = GraphDiagram::new(names, loops, crossings, vertices).expect("still layout is well formed");
        Layout { diagram, arc_of, up }
    }
}

impl fmt::Display for Still {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_levels(&self.levels))
    }
}

/// A closed still seen as a graph diagram, with the slot-to-arc map.
#[derive(Debug, Clone)]
pub struct Layout {
    pub diagram: GraphDiagram,
    pub arc_of: Vec<usize>,
    /// Whether the arc direction runs upward through each slot.
    pub up: Vec<bool>,
}

/// Colour and normal side of every slot of a still.
pub type StillColoring = Vec<(Color, i8)>;

impl Layout {
    pub fn to_still(&self, c: &Coloring) -> StillColoring {
        (0..self.arc_of.len())
            .map(|s| {
                let a = self.arc_of[s];
                let bit = c.orientations[self.diagram.edge_of(a)];
                (c.arc_colors[a], if bit == self.up[s] { 1 } else { -1 })
            })
            .collect()
    }
    pub fn to_diagram(&self, sc: &StillColoring) -> Coloring {
        let mut arc_colors = vec![(0, 0); self.diagram.arc_count()];
        let mut orientations = vec![false; self.diagram.edges().len()];
        for (s, &(c, side)) in sc.iter().enumerate() {
            let a = self.arc_of[s];
            arc_colors[a] = c;
            orientations[self.diagram.edge_of(a)] = (side == 1) == self.up[s];
        }
        Coloring { arc_colors, orientations }
    }
}

/// Partial slot assignment used while solving local constraints.
#[derive(Debug, Clone)]
pub struct Partial {
    pub color: Vec<Option<Color>>,
    pub side: Vec<Option<i8>>,
}

impl Partial {
    pub fn unknown(n: usize) -> Self {
        Partial { color: vec![None; n], side: vec![None; n] }
    }
    fn put_color(&mut self, s: usize, c: Color, changed: &mut bool) -> bool {
        match self.color[s] {
            Some(x) => x == c,
            None => {
                self.color[s] = Some(c);
                *changed = true;
                true
            }
        }
    }
    fn put_side(&mut self, s: usize, v: i8, changed: &mut bool) -> bool {
        match self.side[s] {
            Some(x) => x == v,
            None => {
                self.side[s] = Some(v);
                *changed = true;
                true
            }
        }
    }
    fn same_side(&mut self, a: usize, b: usize, changed: &mut bool) -> bool {
        match (self.side[a], self.side[b]) {
            (Some(x), _) => self.put_side(b, x, changed),
            (None, Some(y)) => self.put_side(a, y, changed),
            _ => true,
        }
    }
    /// Copies equal data between two slots that carry the same strand.
    fn same(&mut self, a: usize, b: usize, flip: bool, changed: &mut bool) -> bool {
        if let Some(c) = self.color[a] {
            if !self.put_color(b, c, changed) {
                return false;
            }
        } else if let Some(c) = self.color[b] {
            self.put_color(a, c, changed);
        }
        let k = if flip { -1 } else { 1 };
        if let Some(v) = self.side[a] {
            if !self.put_side(b, v * k, changed) {
                return false;
            }
        } else if let Some(v) = self.side[b] {
            self.put_side(a, v * k, changed);
        }
        true
    }
}

/// Whether the under strand is pushed by the over colour (rather than by
/// its inverse) at a crossing.
fn acts(side: Side, over_side: i8) -> bool {
    match side {
        Side::Left => over_side == -1,
        Side::Right => over_side == 1,
    }
}

impl Still {
    /// Propagates constraints of levels `lo..hi` to a fixed point. Returns
    /// false on a contradiction.
    pub fn propagate(&self, f: &GFamilyTable, p: &mut Partial, lo: usize, hi: usize) -> bool {
        loop {
            let mut changed = false;
            for j in lo..hi {
                if !self.propagate_level(f, p, j, &mut changed) {
                    return false;
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn propagate_level(&self, f: &GFamilyTable, p: &mut Partial, j: usize, changed: &mut bool) -> bool {
        let level = self.levels[j];
        let (i, (k, m)) = (level.pos(), level.arity());
        let (wb, wt) = (self.widths[j], self.widths[j + 1]);
        for q in 0..i {
            if !p.same(self.slot(j, q), self.slot(j + 1, q), false, changed) {
                return false;
            }
        }
        for q in i + k..wb {
            if !p.same(self.slot(j, q), self.slot(j + 1, q + m - k), false, changed) {
                return false;
            }
        }
        debug_assert!(i + m <= wt);
        match level {
            Level::Cup(_) => p.same(self.slot(j + 1, i), self.slot(j + 1, i + 1), true, changed),
            Level::Cap(_) => p.same(self.slot(j, i), self.slot(j, i + 1), true, changed),
            Level::Cross(_, side) => {
                let (ub, ut, ob) = self.crossing_slots(j);
                let ot = if side == Side::Left { self.slot(j + 1, i + 1) } else { self.slot(j + 1, i) };
                if !p.same(ob, ot, false, changed) || !p.same_side(ub, ut, changed) {
                    return false;
                }
                // the colour rule needs the whole over strand
                let (Some(o), Some(os)) = (p.color[ob], p.side[ob]) else { return true };
                let fwd = acts(side, os);
                if let Some(c) = p.color[ub] {
                    let t = if fwd { f.act(c, o) } else { f.act_inv(c, o) };
                    if !p.put_color(ut, t, changed) {
                        return false;
                    }
                } else if let Some(c) = p.color[ut] {
                    let b = if fwd { f.act_inv(c, o) } else { f.act(c, o) };
                    p.put_color(ub, b, changed);
                }
                true
            }
            Level::Merge(_) | Level::Split(_) => self.propagate_vertex(f, p, j, changed),
        }
    }

    /// Vertex slots in role order with their inward rule: a slot below the
    /// vertex flows in when its normal points left, a slot above when it
    /// points right.
    fn vertex_roles(&self, j: usize) -> [(usize, bool); 3] {
        let v = self.vertex_slots(j);
        v.map(|(s, from)| (s, from == Dir::Above))
    }

    fn propagate_vertex(&self, f: &GFamilyTable, p: &mut Partial, j: usize, changed: &mut bool) -> bool {
        let roles = self.vertex_roles(j);
        // first coordinates agree
        let known = roles.iter().find_map(|&(s, _)| p.color[s].map(|c| c.0));
        let grp = f.group();
        if let Some(x) = known {
            for &(s, _) in &roles {
                if let Some(c) = p.color[s] {
                    if c.0 != x {
                        return false;
                    }
                }
            }
        }
        let inward = |p: &Partial, s: usize, below: bool| p.side[s].map(|v| if below { v == -1 } else { v == 1 });
        let missing: Vec<usize> = (0..3).filter(|&r| p.color[roles[r].0].is_none()).collect();
        let sides_known = roles.iter().all(|&(s, b)| inward(p, s, b).is_some());
        if !sides_known {
            return true;
        }
        let flows: Vec<bool> = roles.iter().map(|&(s, b)| inward(p, s, b).unwrap()).collect();
        match missing.len() {
            0 => {
                let mut prod = grp.identity();
                let mut dirs = Vec::new();
                for r in 0..3 {
                    let g = p.color[roles[r].0].unwrap().1;
                    prod = grp.mul(prod, if flows[r] { g } else { grp.inv(g) });
                    if g != grp.identity() {
                        dirs.push(flows[r]);
                    }
                }
                prod == grp.identity() && (dirs.len() < 2 || dirs.iter().any(|&d| d != dirs[0]))
            }
            1 => {
                let Some(x) = known else { return true };
                let r = missing[0];
                // solve left * g^(+-1) * right = e
                let term = |q: usize| {
                    let g = p.color[roles[q].0].unwrap().1;
                    if flows[q] { g } else { grp.inv(g) }
                };
                let mut left = grp.identity();
                for q in 0..r {
                    left = grp.mul(left, term(q));
                }
                let mut right = grp.identity();
                for q in r + 1..3 {
                    right = grp.mul(right, term(q));
                }
                let t = grp.inv(grp.mul(right, left));
                let g = if flows[r] { t } else { grp.inv(t) };
                p.put_color(roles[r].0, (x, g), changed)
            }
            _ => true,
        }
    }

    /// Checks a complete assignment against every level.
    pub fn check(&self, f: &GFamilyTable, c: &StillColoring) -> bool {
        let mut p = Partial {
            color: c.iter().map(|x| Some(x.0)).collect(),
            side: c.iter().map(|x| Some(x.1)).collect(),
        };
        let mut changed = false;
        (0..self.levels.len()).all(|j| self.propagate_level(f, &mut p, j, &mut changed))
    }

    /// All completions of a partial assignment, branching on the first
    /// undetermined slot among `free`.
    pub fn complete(&self, f: &GFamilyTable, p: Partial, lo: usize, hi: usize, free: &[usize], out: &mut Vec<StillColoring>) {
        let mut p = p;
        if !self.propagate(f, &mut p, lo, hi) {
            return;
        }
        let open = free.iter().copied().find(|&s| p.color[s].is_none() || p.side[s].is_none());
        match open {
            None => {
                let full: Option<StillColoring> =
                    p.color.iter().zip(&p.side).map(|(c, s)| Some(((*c)?, (*s)?))).collect();
                if let Some(full) = full {
                    out.push(full);
                }
            }
            Some(s) => {
                if p.side[s].is_none() {
                    for v in [-1i8, 1] {
                        let mut q = p.clone();
                        q.side[s] = Some(v);
                        self.complete(f, q, lo, hi, free, out);
                    }
                } else {
                    for a in 0..f.carrier_size() {
                        for g in 0..f.group().order() {
                            let mut q = p.clone();
                            q.color[s] = Some((a, g));
                            self.complete(f, q, lo, hi, free, out);
                        }
                    }
                }
            }
        }
    }

    /// Every colouring of the still, found directly on the Morse word.
    pub fn colorings(&self, f: &GFamilyTable) -> Vec<StillColoring> {
        let n = self.slot_count();
        let mut out = Vec::new();
        let free: Vec<usize> = (0..n).collect();
        self.complete(f, Partial::unknown(n), 0, self.levels.len(), &free, &mut out);
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{r_tilde, GFamilyTable};
    use crate::diagrams::enumerate_colorings;

    fn still(s: &str) -> Still {
        Still::closed(parse_levels(s.split_whitespace()).unwrap()).unwrap()
    }

    fn agree(s: &Still, f: &GFamilyTable) -> usize {
        let lay = s.layout();
        let via: Vec<StillColoring> = {
            let mut v: Vec<_> = enumerate_colorings(&lay.diagram, f).iter().map(|c| lay.to_still(c)).collect();
            v.sort();
            v
        };
        let direct = s.colorings(f);
        assert_eq!(via, direct, "{s}");
        for c in &direct {
            assert!(s.check(f, c));
            assert_eq!(lay.to_still(&lay.to_diagram(c)), *c);
        }
        direct.len()
    }

    #[test]
    fn circle_and_theta() {
        let f = r_tilde();
        assert_eq!(agree(&still("cup0 cap0"), &f), 12);
        assert_eq!(agree(&still("cup0 split1 merge1 cap0"), &f), agree(&still("cup0 split0 merge0 cap0"), &f));
        assert_eq!(agree(&still("cup0 split1 merge1 cap0"), &GFamilyTable::trivial()), 8);
    }

    #[test]
    fn knotted_stills_agree_with_diagram_enumeration() {
        let f = r_tilde();
        // closure of a three-crossing two-braid: 6 flat colourings and 9
        // Fox colourings on the nontrivial sheet, each with two normals
        let trefoil = still("cup0 cup1 lx2 lx2 lx2 cap1 cap0");
        assert_eq!(agree(&trefoil, &f), 24);
        // the plat closure of the same twist is a trefoil as well
        assert_eq!(agree(&still("cup0 cup2 lx1 lx1 lx1 cap0 cap0"), &f), 24);
        agree(&still("cup0 cup1 rx1 lx0 rx1 cap1 cap0"), &f);
        agree(&still("cup0 split1 lx0 rx1 lx0 merge1 cap0"), &f);
        agree(&still("cup0 split0 lx1 lx1 lx1 merge0 cap0"), &f);
        agree(&still("cup0 cup0 rx1 cap1 cap0"), &f);
    }

    #[test]
    fn crossing_direction_matters_for_a_cyclic_group_of_order_four() {
        let f = crate::algebra::linear_gfamily(5, &[1, 2, 3, 4]).unwrap();
        agree(&still("cup0 cup1 lx2 lx2 lx2 cap1 cap0"), &f);
        agree(&still("cup0 cup1 lx2 rx2 lx2 lx2 cap1 cap0"), &f);
        agree(&still("cup0 split1 lx0 rx1 lx0 merge1 cap0"), &f);
        agree(&still("cup0 split0 cup1 lx2 rx0 lx1 cap0 merge0 cap0"), &f);
    }

    #[test]
    fn reflections_are_involutions() {
        let levels = parse_levels("cup0 cup1 lx1 split0 merge2".split_whitespace()).unwrap();
        let w = layer_widths(0, &levels).unwrap();
        for (j, l) in levels.iter().enumerate() {
            assert_eq!(l.mirrored(w[j]).mirrored(w[j]), *l);
            assert_eq!(l.flipped().flipped(), *l);
        }
    }
}
