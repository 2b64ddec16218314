//! Local moves between stills. Each move replaces a window of consecutive
//! levels; the catalogue is generated from a few base pictures closed under
//! left-right reflection, top-bottom reflection and crossing change.

use super::still::{layer_widths, Level, Side};
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// Interchange of two levels acting on disjoint strands.
    Swap,
    R1,
    R2,
    R3,
    /// A strand passes a trivalent vertex.
    Iv,
    /// A vertex twists, trading a crossing of two of its edges.
    V,
    Birth,
    Death,
    Saddle,
    /// A pair of vertices appears, as a bigon on one strand or as an H between two.
    YBirth,
    YDeath,
}

impl Kind {
    pub const ALL: [Kind; 11] = [
        Kind::Swap,
        Kind::R1,
        Kind::R2,
        Kind::R3,
        Kind::Iv,
        Kind::V,
        Kind::Birth,
        Kind::Death,
        Kind::Saddle,
        Kind::YBirth,
        Kind::YDeath,
    ];
    pub fn name(self) -> &'static str {
        match self {
            Kind::Swap => "swap",
            Kind::R1 => "r1",
            Kind::R2 => "r2",
            Kind::R3 => "r3",
            Kind::Iv => "iv",
            Kind::V => "v",
            Kind::Birth => "birth",
            Kind::Death => "death",
            Kind::Saddle => "saddle",
            Kind::YBirth => "ybirth",
            Kind::YDeath => "ydeath",
        }
    }
    pub fn parse(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == s)
    }
    /// The kind of the same move run backwards.
    pub fn reversed(self) -> Kind {
        match self {
            Kind::Birth => Kind::Death,
            Kind::Death => Kind::Birth,
            Kind::YBirth => Kind::YDeath,
            Kind::YDeath => Kind::YBirth,
            k => k,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

type Word = Vec<Level>;

fn mirror(w0: usize, word: &[Level]) -> Word {
    let widths = layer_widths(w0, word).expect("pattern fits");
    word.iter().enumerate().map(|(j, l)| l.mirrored(widths[j])).collect()
}

fn flip(word: &[Level]) -> Word {
    word.iter().rev().map(|l| l.flipped()).collect()
}

fn change(word: &[Level]) -> Word {
    word.iter().map(|l| l.crossing_changed()).collect()
}

/// Shifts a word so that its leftmost position is zero.
fn normalize(old: &[Level], new: &[Level]) -> (Word, Word) {
    let lo = old.iter().chain(new).map(|l| l.pos()).min().unwrap_or(0);
    let f = |w: &[Level]| w.iter().map(|l| l.with_pos(l.pos() - lo)).collect();
    (f(old), f(new))
}

type Catalogue = HashMap<Kind, HashSet<(Word, Word)>>;

fn catalogue() -> &'static Catalogue {
    static CAT: OnceLock<Catalogue> = OnceLock::new();
    CAT.get_or_init(|| {
        use Level::*;
        use Side::*;
        let base: Vec<(Kind, usize, Word, Word)> = vec![
            (Kind::R1, 2, vec![Cap(0)], vec![Cross(0, Left), Cap(0)]),
            (Kind::R2, 2, vec![], vec![Cross(0, Left), Cross(0, Right)]),
            // a strand slides over the bottom of a cup
            (Kind::R2, 1, vec![Cup(1), Cross(0, Left), Cross(1, Left)], vec![Cup(0)]),
            // a strand slides over a vertex
            (Kind::Iv, 3, vec![Merge(1), Cross(0, Left)], vec![Cross(0, Left), Cross(1, Left), Merge(0)]),
            (Kind::V, 2, vec![Cross(0, Left), Merge(0)], vec![Merge(0)]),
            (Kind::Birth, 0, vec![], vec![Cup(0), Cap(0)]),
            (Kind::Saddle, 2, vec![Cap(0), Cup(0)], vec![]),
            (Kind::YBirth, 2, vec![], vec![Merge(0), Split(0)]),
            (Kind::YBirth, 1, vec![], vec![Split(0), Merge(0)]),
        ];
        let mut cat: Catalogue = HashMap::new();
        for (kind, w0, old, new) in base {
            let mut todo = vec![(w0, old, new)];
            let mut seen = HashSet::new();
            while let Some((w, o, n)) = todo.pop() {
                let key = normalize(&o, &n);
                if !seen.insert((w, key.clone())) {
                    continue;
                }
                cat.entry(kind).or_default().insert(key.clone());
                cat.entry(kind.reversed()).or_default().insert((key.1.clone(), key.0.clone()));
                let top = *layer_widths(w, &o).unwrap().last().unwrap();
                todo.push((w, mirror(w, &o), mirror(w, &n)));
                todo.push((top, flip(&o), flip(&n)));
                todo.push((w, change(&o), change(&n)));
            }
        }
        cat
    })
}

/// Over/under relations of the three strands in `lx/rx i, i+1, i` (left
/// form) or `i+1, i, i+1` (right form), as (a over b, a over c, b over c)
/// where a starts at i, b at i+1 and c at i+2.
fn r3_heights(word: &[Level]) -> Option<(bool, [bool; 3])> {
    let [Level::Cross(p, s1), Level::Cross(q, s2), Level::Cross(r, s3)] = *word else { return None };
    let l = |s: Side| s == Side::Left;
    if q == p + 1 && r == p {
        Some((true, [l(s1), l(s2), l(s3)]))
    } else if p == q + 1 && r == p {
        Some((false, [l(s3), l(s2), l(s1)]))
    } else {
        None
    }
}

/// Strand base position and orientation of a legal R3 window.
pub fn r3_form(old: &[Level], new: &[Level]) -> Option<(usize, bool, [bool; 3])> {
    let (lo, ho) = r3_heights(old)?;
    let (ln, hn) = r3_heights(new)?;
    if lo == ln || ho != hn {
        return None;
    }
    let [ab, ac, bc] = ho;
    let cyclic = (ab && bc && !ac) || (!ab && !bc && ac);
    if cyclic {
        return None;
    }
    let i = old.iter().chain(new).map(|l| l.pos()).min().unwrap();
    let lhs_old = lo;
    Some((i, lhs_old, ho))
}

fn swap_ok(old: &[Level], new: &[Level]) -> bool {
    let ([a, b], [b2, a2]) = (old, new) else { return false };
    let (ka, ma) = a.arity();
    let (kb, mb) = b.arity();
    let (pa, pb) = (a.pos(), b.pos());
    let expect = if pb >= pa + ma {
        (b.with_pos(pb - ma + ka), *a)
    } else if pb + kb <= pa {
        (*b, a.with_pos(pa - kb + mb))
    } else {
        return false;
    };
    expect == (*b2, *a2)
}

/// Whether replacing `old` by `new` is a move of the given kind.
pub fn is_move(kind: Kind, old: &[Level], new: &[Level]) -> bool {
    match kind {
        Kind::Swap => swap_ok(old, new),
        Kind::R3 => r3_form(old, new).is_some(),
        _ => catalogue().get(&kind).is_some_and(|set| set.contains(&normalize(old, new))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foam::still::parse_levels;

    fn w(s: &str) -> Vec<Level> {
        parse_levels(s.split_whitespace()).unwrap()
    }

    #[test]
    fn catalogue_contains_expected_variants() {
        assert!(is_move(Kind::R1, &w("cap3"), &w("rx3 cap3")));
        assert!(is_move(Kind::R1, &w("cup0 lx0"), &w("cup0")));
        assert!(is_move(Kind::R2, &w(""), &w("rx2 lx2")));
        assert!(is_move(Kind::R2, &w("cup2 rx1 rx2"), &w("cup1")));
        assert!(is_move(Kind::R2, &w("cup1"), &w("cup2 rx1 rx2")));
        assert!(is_move(Kind::R2, &w("lx1 lx0 cap1"), &w("cap0")));
        assert!(is_move(Kind::Iv, &w("lx1 lx2 merge1"), &w("merge2 lx1")));
        assert!(is_move(Kind::Iv, &w("split0 rx1 rx0"), &w("rx0 split1")));
        assert!(is_move(Kind::Birth, &w(""), &w("cup4 cap4")));
        assert!(is_move(Kind::Death, &w("cup4 cap4"), &w("")));
        assert!(!is_move(Kind::Birth, &w("cup4 cap4"), &w("")));
        assert!(is_move(Kind::Saddle, &w(""), &w("cap1 cup1")));
        assert!(is_move(Kind::YDeath, &w("split0 merge0"), &w("")));
        assert!(is_move(Kind::V, &w("split0 rx0"), &w("split0")));
        // a strand over one leg and under the other is not a move
        assert!(!is_move(Kind::Iv, &w("merge1 lx0"), &w("lx0 rx1 merge0")));
    }

    #[test]
    fn r3_requires_a_consistent_height_order() {
        assert!(is_move(Kind::R3, &w("lx0 lx1 lx0"), &w("lx1 lx0 lx1")));
        assert!(is_move(Kind::R3, &w("lx4 rx3 rx4"), &w("rx3 rx4 lx3")));
        assert!(!is_move(Kind::R3, &w("lx0 lx1 lx0"), &w("lx0 lx1 lx0")));
        // a over b, b over c, c over a
        assert!(!is_move(Kind::R3, &w("lx0 rx1 lx0"), &w("lx1 rx0 lx1")));
        assert!(!is_move(Kind::R3, &w("lx0 lx1 lx0"), &w("lx1 lx0 rx1")));
    }

    #[test]
    fn far_commutation() {
        assert!(is_move(Kind::Swap, &w("cup0 lx3"), &w("lx1 cup0")));
        assert!(is_move(Kind::Swap, &w("lx3 cap0"), &w("cap0 lx1")));
        assert!(is_move(Kind::Swap, &w("merge0 lx2"), &w("lx3 merge0")));
        assert!(!is_move(Kind::Swap, &w("lx0 lx1"), &w("lx1 lx0")));
    }
}
