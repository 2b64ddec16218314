//! Twist spinning of a 1-string tangle.
//!
//! The closure K of the tangle T and the closure of its vertical mirror are
//! built from nothing by zipping T against its mirror, split apart by a
//! saddle, and then the return strand S of K is swung around T n full
//! turns, once in front and once behind per turn. Each sweep is a staircase
//! of crossings travelling through the levels of T, so every crossing of T
//! gives one triple point per sweep. Running the first half backwards
//! closes the foam.

use super::moves::Kind;
use super::movie::{Designation, Event, Movie};
use super::still::{parse_levels, Level, Side, Still, StillError};

/// Reads a tangle: a Morse word from one strand to one strand.
pub fn parse_tangle(text: &str) -> Result<Vec<Level>, StillError> {
    let toks = text.lines().flat_map(|l| l.split('#').next().unwrap().split_whitespace());
    let s = Still::new(1, parse_levels(toks)?)?;
    match s.top_width() {
        1 => Ok(s.levels().to_vec()),
        w => Err(StillError::Open(w)),
    }
}

/// T read upside down.
pub fn vertical_mirror(t: &[Level]) -> Vec<Level> {
    t.iter().rev().map(|l| l.flipped()).collect()
}

/// How the strand is swept around the tangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Kinks are made at the cap and staircases travel downward.
    Descending,
    /// Kinks are made at the cup and staircases travel upward.
    Ascending,
}

struct Rec {
    levels: Vec<Level>,
    events: Vec<Event>,
}

impl Rec {
    fn push(&mut self, kind: Kind, at: usize, old_len: usize, new: Vec<Level>) {
        let old: Vec<Level> = self.levels.splice(at..at + old_len, new.iter().copied()).collect();
        self.events.push(Event::new(kind, at, old, new));
    }

    /// Moves the level at `i + 1` below the level at `i`.
    fn swap_down(&mut self, i: usize) {
        let (a, b) = (self.levels[i], self.levels[i + 1]);
        let (ka, ma) = a.arity();
        let (kb, mb) = b.arity();
        let (pa, pb) = (a.pos(), b.pos());
        let new = if pb >= pa + ma {
            vec![b.with_pos(pb - ma + ka), a]
        } else {
            assert!(pb + kb <= pa, "levels {a} and {b} do not commute");
            vec![b, a.with_pos(pa - kb + mb)]
        };
        self.push(Kind::Swap, i, 2, new);
    }

    fn width_below(&self, i: usize) -> usize {
        Still::new(0, self.levels[..i].to_vec()).unwrap().top_width()
    }

    fn replay(&mut self, events: impl IntoIterator<Item = Event>) {
        for e in events {
            assert_eq!(self.levels[e.at..e.at + e.old.len()], e.old[..]);
            self.push(e.kind, e.at, e.old.len(), e.new);
        }
    }
}

/// Events from the empty still to the closure of T followed by its mirror.
fn build(t: &[Level]) -> Vec<Event> {
    let mut rec = Rec { levels: vec![], events: vec![] };
    rec.push(Kind::Birth, 0, 0, vec![Level::Cup(0), Level::Cap(0)]);
    for (j, &l) in t.iter().enumerate() {
        let kind = match l {
            Level::Cross(..) => Kind::R2,
            Level::Cup(_) => Kind::Birth,
            Level::Cap(_) => Kind::Saddle,
            Level::Merge(_) | Level::Split(_) => Kind::YBirth,
        };
        rec.push(kind, 1 + j, 0, vec![l, l.flipped()]);
    }
    rec.events
}

fn reversed(events: &[Event]) -> Vec<Event> {
    events.iter().rev().map(Event::inverse).collect()
}

/// One downward sweep through the first component of the still, whose cup
/// is level 0 and whose tangle part has `t_len` levels. Going up through
/// the staircase S moves right to left unless `left_to_right`; every
/// staircase crossing has side `side`.
fn descend(rec: &mut Rec, t_len: usize, left_to_right: bool, side: Side) {
    let cross = |q: usize| Level::Cross(q, side);
    rec.push(Kind::R1, 1 + t_len, 1, vec![cross(0), Level::Cap(0)]);
    for li in (1..1 + t_len).rev() {
        let l = rec.levels[li];
        let (k, m) = l.arity();
        let p = l.pos();
        // strands of T in the layer above L
        let w_top = rec.width_below(li + 1) - 1;
        // staircase crossings before and after those passing L's outputs
        let (before, after) = if left_to_right { (p - 1, w_top + 1 - p - m) } else { (w_top - p - m, p) };
        let mut at = li;
        for _ in 0..before {
            rec.swap_down(at);
            at += 1;
        }
        let l = rec.levels[at];
        let (new, kind): (Vec<Level>, Kind) = if left_to_right {
            let mut v: Vec<Level> = (0..k).map(|j| cross(p - 1 + j)).collect();
            v.push(l.with_pos(p - 1));
            (v, local_kind(l))
        } else {
            let mut v: Vec<Level> = (0..k).rev().map(|j| cross(p + j)).collect();
            v.push(l.with_pos(p + 1));
            (v, local_kind(l))
        };
        rec.push(kind, at, 1 + m, new);
        at += k;
        for _ in 0..after {
            rec.swap_down(at);
            at += 1;
        }
    }
    rec.push(Kind::R1, 0, 2, vec![Level::Cup(0)]);
}

fn local_kind(l: Level) -> Kind {
    match l {
        Level::Cross(..) => Kind::R3,
        Level::Cup(_) | Level::Cap(_) => Kind::R2,
        Level::Merge(_) | Level::Split(_) => Kind::Iv,
    }
}

/// Events of one full turn of S around T, starting and ending with S on
/// the right.
fn turn(levels: &[Level], t_len: usize, route: Route) -> Vec<Event> {
    let mut rec = Rec { levels: levels.to_vec(), events: vec![] };
    match route {
        Route::Descending => {
            // in front, right to left; then behind, left to right
            descend(&mut rec, t_len, false, Side::Right);
            descend(&mut rec, t_len, true, Side::Right);
        }
        Route::Ascending => {
            // the same two passes, each run as a downward sweep backwards
            let mut shifted = vec![Level::Cup(0)];
            shifted.extend(levels[1..1 + t_len].iter().map(|l| l.shifted(1)));
            shifted.extend_from_slice(&levels[1 + t_len..]);
            let mut front = Rec { levels: shifted.clone(), events: vec![] };
            descend(&mut front, t_len, true, Side::Left);
            rec.replay(reversed(&front.events));
            let mut back = Rec { levels: levels.to_vec(), events: vec![] };
            descend(&mut back, t_len, false, Side::Left);
            rec.replay(reversed(&back.events));
        }
    }
    assert_eq!(rec.levels, levels);
    rec.events
}

/// The movie of the n-twist spin of T.
pub fn twist_spin(t: &[Level], n: usize) -> Movie {
    twist_spin_by(t, n, Route::Descending)
}

pub fn twist_spin_by(t: &[Level], n: usize, route: Route) -> Movie {
    let build = build(t);
    let mut rec = Rec { levels: vec![], events: vec![] };
    rec.replay(build.iter().cloned());
    rec.push(Kind::Saddle, 1 + t.len(), 0, vec![Level::Cap(0), Level::Cup(0)]);
    let seed = rec.events.len();
    for _ in 0..n {
        let ev = turn(&rec.levels, t.len(), route);
        rec.replay(ev);
    }
    rec.push(Kind::Saddle, 1 + t.len(), 2, vec![]);
    rec.replay(reversed(&build));
    Movie { initial: vec![], events: rec.events, seed: Some((seed, Designation::Seed)) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::r_tilde;
    use crate::foam::movie::{cocycle_invariant, validate_movie};
    use crate::homology::CocycleTable;

    fn tangle(s: &str) -> Vec<Level> {
        parse_tangle(s).unwrap()
    }

    #[test]
    fn trivial_tangle_spins_to_a_zero_invariant() {
        let t = tangle("");
        for n in 0..3 {
            for route in [Route::Descending, Route::Ascending] {
                let m = twist_spin_by(&t, n, route);
                let stills = validate_movie(&m).unwrap();
                let r = cocycle_invariant(&m, &stills, &r_tilde(), &CocycleTable::mochizuki()).unwrap();
                assert_eq!(r.polynomial, "12", "n = {n}");
            }
        }
    }

    #[test]
    fn spins_of_a_trefoil_tangle_validate() {
        // trefoil as a long knot
        let t = tangle("cup1 lx0 lx0 lx0 cap1");
        for n in 0..3 {
            for route in [Route::Descending, Route::Ascending] {
                let m = twist_spin_by(&t, n, route);
                let stills = validate_movie(&m).unwrap_or_else(|e| panic!("{route:?} n={n}: {e}"));
                assert!(stills.last().unwrap().levels().is_empty());
                let r3 = m.events.iter().filter(|e| e.kind == Kind::R3).count();
                assert_eq!(r3, 2 * 3 * n);
            }
        }
    }
}
