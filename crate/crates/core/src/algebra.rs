//! Finite groups, G-families of quandles and their associated quandles.
//!
//! Everything is a lookup table over dense indices. Labels are kept only for
//! parsing and printing.

use crate::report::{ValidationReport, Violation};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("table shape: {0}")]
    Shape(String),
    #[error("index {index} out of range (size {size})")]
    OutOfRange { index: usize, size: usize },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("units do not form a subgroup mod {p}: {why}")]
    NotSubgroup { p: u32, why: String },
    #[error("family fails its axioms:\n{0}")]
    Axioms(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    labels: Vec<String>,
    mul: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Builds a table from explicit data. Only the shape is checked here.
    pub fn new(
        labels: Vec<String>,
        mul: Vec<usize>,
        identity: usize,
        inverse: Vec<usize>,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if n == 0 {
            return Err(AlgebraError::Shape("empty group".into()));
        }
        if mul.len() != n * n {
            return Err(AlgebraError::Shape(format!(
                "mul has {} entries, expected {}",
                mul.len(),
                n * n
            )));
        }
        if inverse.len() != n {
            return Err(AlgebraError::Shape(format!(
                "inverse has {} entries, expected {n}",
                inverse.len()
            )));
        }
        for &x in mul.iter().chain(inverse.iter()).chain(std::iter::once(&identity)) {
            if x >= n {
                return Err(AlgebraError::OutOfRange { index: x, size: n });
            }
        }
        Ok(GroupTable { labels, mul, identity, inverse })
    }

    /// Builds a table from its multiplication alone; identity and inverses
    /// are searched for and left at 0 when absent (validation then fails).
    pub fn from_mul(labels: Vec<String>, mul: Vec<usize>) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if mul.len() != n * n {
            return Err(AlgebraError::Shape(format!(
                "mul has {} entries, expected {}",
                mul.len(),
                n * n
            )));
        }
        let at = |a: usize, b: usize| mul[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .unwrap_or(0);
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| at(a, b) == identity).unwrap_or(0))
            .collect();
        GroupTable::new(labels, mul, identity, inverse)
    }

    /// Cyclic group of order n, written additively.
    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let mul = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let inverse = (0..n).map(|a| (n - a) % n).collect();
        GroupTable::new(labels, mul, 0, inverse).expect("cyclic table is well formed")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }
    pub fn identity(&self) -> usize {
        self.identity
    }
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    /// h⁻¹ g h
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), g), h)
    }
    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

pub fn validate_group(t: &GroupTable) -> ValidationReport {
    let n = t.order();
    let mut rep = ValidationReport::default();
    let first = |rep: &mut ValidationReport, rule: &str, w: Vec<usize>, d: String| {
        if !rep.has_rule(rule) {
            rep.push(Violation { rule: rule.into(), witness: w, detail: d });
        }
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                rep.checked += 1;
                let l = t.mul(t.mul(a, b), c);
                let r = t.mul(a, t.mul(b, c));
                if l != r {
                    first(&mut rep, "associativity", vec![a, b, c], format!("(ab)c={l} a(bc)={r}"));
                }
            }
        }
    }
    let e = t.identity();
    for a in 0..n {
        rep.checked += 1;
        if t.mul(e, a) != a || t.mul(a, e) != a {
            first(&mut rep, "identity", vec![a], format!("e={e} is not two-sided on {a}"));
        }
        if t.mul(a, t.inv(a)) != e || t.mul(t.inv(a), a) != e {
            first(&mut rep, "inverse", vec![a], format!("inverse {} fails", t.inv(a)));
        }
    }
    rep
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GFamilyTable {
    carrier: Vec<String>,
    group: GroupTable,
    /// op[(g * n + a) * n + b] = a ◁_g b
    op: Vec<usize>,
}

impl GFamilyTable {
    pub fn new(carrier: Vec<String>, group: GroupTable, op: Vec<usize>) -> Result<Self, AlgebraError> {
        let n = carrier.len();
        let m = group.order();
        if n == 0 {
            return Err(AlgebraError::Shape("empty carrier".into()));
        }
        if op.len() != m * n * n {
            return Err(AlgebraError::Shape(format!(
                "op has {} entries, expected {}",
                op.len(),
                m * n * n
            )));
        }
        if let Some(&x) = op.iter().find(|&&x| x >= n) {
            return Err(AlgebraError::OutOfRange { index: x, size: n });
        }
        Ok(GFamilyTable { carrier, group, op })
    }

    /// a ◁_g b = a for every g.
    pub fn constant(n: usize, group: GroupTable) -> Self {
        let carrier = (0..n).map(|i| i.to_string()).collect();
        let op = (0..group.order() * n * n).map(|k| (k / n) % n).collect();
        GFamilyTable::new(carrier, group, op).expect("constant family is well formed")
    }

    /// One-point carrier over the trivial group.
    pub fn trivial() -> Self {
        GFamilyTable::constant(1, GroupTable::cyclic(1))
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier.len()
    }
    pub fn group(&self) -> &GroupTable {
        &self.group
    }
    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }
    pub fn op(&self, g: usize, a: usize, b: usize) -> usize {
        let n = self.carrier.len();
        self.op[(g * n + a) * n + b]
    }
    /// Overwrites one entry; used by mutation tests.
    pub fn set_op(&mut self, g: usize, a: usize, b: usize, v: usize) {
        let n = self.carrier.len();
        self.op[(g * n + a) * n + b] = v;
    }
    pub fn table_len(&self) -> usize {
        self.op.len()
    }
    /// (a,g) ◁ (b,h) = (a ◁_h b, h⁻¹gh) in the associated quandle.
    pub fn act(&self, x: (usize, usize), y: (usize, usize)) -> (usize, usize) {
        (self.op(y.1, x.0, y.0), self.group.conj(x.1, y.1))
    }
    /// Inverse of the right translation by y.
    pub fn act_inv(&self, x: (usize, usize), y: (usize, usize)) -> (usize, usize) {
        let hi = self.group.inv(y.1);
        (self.op(hi, x.0, y.0), self.group.conj(x.1, hi))
    }
    /// Number of elements of the associated quandle X×G.
    pub fn pair_count(&self) -> usize {
        self.carrier.len() * self.group.order()
    }
}

pub fn check_gfamily_axioms(f: &GFamilyTable) -> ValidationReport {
    let mut rep = validate_group(f.group());
    let rename = |r: &mut ValidationReport| {
        for v in &mut r.violations {
            v.rule = format!("group.{}", v.rule);
        }
    };
    rename(&mut rep);
    let grp = f.group();
    let n = f.carrier_size();
    let m = grp.order();
    let e = grp.identity();
    let note = |rep: &mut ValidationReport, rule: &str, w: Vec<usize>, d: String| {
        if !rep.has_rule(rule) {
            rep.push(Violation { rule: rule.into(), witness: w, detail: d });
        }
    };
    for g in 0..m {
        for a in 0..n {
            rep.checked += 1;
            if f.op(g, a, a) != a {
                note(&mut rep, "idempotence", vec![g, a], format!("a<|_g a = {}", f.op(g, a, a)));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            rep.checked += 1;
            if f.op(e, a, b) != a {
                note(&mut rep, "identity-trivial", vec![a, b], format!("a<|_e b = {}", f.op(e, a, b)));
            }
            for g in 0..m {
                for h in 0..m {
                    rep.checked += 1;
                    let l = f.op(h, f.op(g, a, b), b);
                    let r = f.op(grp.mul(g, h), a, b);
                    if l != r {
                        note(&mut rep, "exponent", vec![a, b, g, h], format!("{l} != {r}"));
                    }
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for g in 0..m {
                    for h in 0..m {
                        rep.checked += 1;
                        let l = f.op(h, f.op(g, a, b), c);
                        let r = f.op(grp.conj(g, h), f.op(h, a, c), f.op(h, b, c));
                        if l != r {
                            note(
                                &mut rep,
                                "twisted-distributivity",
                                vec![a, b, c, g, h],
                                format!("{l} != {r}"),
                            );
                        }
                    }
                }
            }
        }
    }
    rep
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// X = Z_p, G = the given unit subgroup, a ◁_M b = aM + b - bM.
pub fn linear_gfamily(p: u32, units: &[u32]) -> Result<GFamilyTable, AlgebraError> {
    if !is_prime(p) {
        return Err(AlgebraError::NotPrime(p));
    }
    let mut us: Vec<u32> = units.iter().map(|u| u % p).collect();
    us.sort_unstable();
    us.dedup();
    let bad = |why: String| AlgebraError::NotSubgroup { p, why };
    if us.is_empty() || us.contains(&0) {
        return Err(bad("units must be nonzero and nonempty".into()));
    }
    if !us.contains(&1) {
        return Err(bad("missing 1".into()));
    }
    let idx = |v: u32| us.iter().position(|&u| u == v);
    let m = us.len();
    let mut mul = Vec::with_capacity(m * m);
    for &x in &us {
        for &y in &us {
            let z = x * y % p;
            mul.push(idx(z).ok_or_else(|| bad(format!("{x}*{y}={z} not in set")))?);
        }
    }
    let labels = us.iter().map(|u| u.to_string()).collect();
    let group = GroupTable::from_mul(labels, mul)?;
    let n = p as usize;
    let mut op = Vec::with_capacity(m * n * n);
    for &mm in &us {
        for a in 0..p {
            for b in 0..p {
                let v = (a * mm + b + (p - b * mm % p)) % p;
                op.push(v as usize);
            }
        }
    }
    let carrier = (0..p).map(|i| i.to_string()).collect();
    GFamilyTable::new(carrier, group, op)
}

/// The F_3 family over {±1}, relabelled additively as Z_2 = {0, 1}.
pub fn r_tilde() -> GFamilyTable {
    let f = linear_gfamily(3, &[1, 2]).expect("F_3 units form a group");
    let group = GroupTable::cyclic(2);
    GFamilyTable::new(f.carrier, group, f.op).expect("same shape")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuandleTable {
    labels: Vec<String>,
    op: Vec<usize>,
}

impl QuandleTable {
    pub fn new(labels: Vec<String>, op: Vec<usize>) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if op.len() != n * n {
            return Err(AlgebraError::Shape(format!("op has {} entries, expected {}", op.len(), n * n)));
        }
        if let Some(&x) = op.iter().find(|&&x| x >= n) {
            return Err(AlgebraError::OutOfRange { index: x, size: n });
        }
        Ok(QuandleTable { labels, op })
    }
    /// a ◁ b = 2b - a mod n
    pub fn dihedral(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let op = (0..n * n).map(|k| (2 * (k % n) + n - k / n) % n).collect();
        QuandleTable::new(labels, op).expect("dihedral table is well formed")
    }
    pub fn size(&self) -> usize {
        self.labels.len()
    }
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.op[a * self.size() + b]
    }
    pub fn set_op(&mut self, a: usize, b: usize, v: usize) {
        let n = self.size();
        self.op[a * n + b] = v;
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

pub fn check_quandle_axioms(q: &QuandleTable) -> ValidationReport {
    let n = q.size();
    let mut rep = ValidationReport::default();
    let note = |rep: &mut ValidationReport, rule: &str, w: Vec<usize>, d: String| {
        if !rep.has_rule(rule) {
            rep.push(Violation { rule: rule.into(), witness: w, detail: d });
        }
    };
    for a in 0..n {
        rep.checked += 1;
        if q.op(a, a) != a {
            note(&mut rep, "idempotence", vec![a], format!("a<|a = {}", q.op(a, a)));
        }
    }
    for b in 0..n {
        rep.checked += 1;
        let mut seen = vec![false; n];
        for a in 0..n {
            let v = q.op(a, b);
            if seen[v] {
                note(&mut rep, "right-bijective", vec![b, v], format!("value {v} hit twice"));
                break;
            }
            seen[v] = true;
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                rep.checked += 1;
                let l = q.op(q.op(a, b), c);
                let r = q.op(q.op(a, c), q.op(b, c));
                if l != r {
                    note(&mut rep, "self-distributivity", vec![a, b, c], format!("{l} != {r}"));
                }
            }
        }
    }
    rep
}

/// Index of (a, g) in the associated quandle; lexicographic in (a, g).
pub fn pair_index(f: &GFamilyTable, a: usize, g: usize) -> usize {
    a * f.group().order() + g
}

pub fn associated_quandle(f: &GFamilyTable) -> Result<QuandleTable, AlgebraError> {
    let rep = check_gfamily_axioms(f);
    if !rep.passed() {
        return Err(AlgebraError::Axioms(rep.render()));
    }
    let n = f.carrier_size();
    let m = f.group().order();
    let mut labels = Vec::with_capacity(n * m);
    for a in 0..n {
        for g in 0..m {
            labels.push(format!("({},{})", f.carrier()[a], f.group().labels()[g]));
        }
    }
    let mut op = Vec::with_capacity(n * m * n * m);
    for a in 0..n {
        for g in 0..m {
            for b in 0..n {
                for h in 0..m {
                    op.push(pair_index(f, f.op(h, a, b), f.group().conj(g, h)));
                }
            }
        }
    }
    QuandleTable::new(labels, op)
}

// ---- text format ----

fn tokens(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .map(|(i, l)| (i, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, t)| !t.is_empty())
        .collect()
}

struct Cursor<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn next(&mut self) -> Result<(usize, Vec<&'a str>), AlgebraError> {
        let last = self.lines.last().map(|l| l.0).unwrap_or(0);
        let r = self.lines.get(self.pos).cloned().ok_or(AlgebraError::Parse {
            line: last + 1,
            msg: "unexpected end of input".into(),
        })?;
        self.pos += 1;
        Ok(r)
    }
    fn peek_is(&self, word: &str) -> bool {
        self.lines.get(self.pos).map(|l| l.1[0] == word).unwrap_or(false)
    }
    fn done(&self) -> Result<(), AlgebraError> {
        match self.lines.get(self.pos) {
            None => Ok(()),
            Some((line, _)) => Err(AlgebraError::Parse { line: *line, msg: "trailing content".into() }),
        }
    }
    fn header(&mut self, word: &str, arity: usize) -> Result<Vec<usize>, AlgebraError> {
        let (line, t) = self.next()?;
        if t[0] != word || t.len() != arity + 1 {
            return Err(AlgebraError::Parse { line, msg: format!("expected `{word}` header with {arity} sizes") });
        }
        t[1..].iter().map(|s| num(line, s)).collect()
    }
    fn labels(&mut self, n: usize) -> Result<Vec<String>, AlgebraError> {
        if self.peek_is("labels") {
            let (line, t) = self.next()?;
            if t.len() != n + 1 {
                return Err(AlgebraError::Parse { line, msg: format!("expected {n} labels") });
            }
            return Ok(t[1..].iter().map(|s| s.to_string()).collect());
        }
        Ok((0..n).map(|i| i.to_string()).collect())
    }
    /// `rows` rows of `cols` labels each, resolved against `names`.
    fn rows(&mut self, rows: usize, cols: usize, names: &[String]) -> Result<Vec<usize>, AlgebraError> {
        let mut out = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (line, t) = self.next()?;
            if t.len() != cols {
                return Err(AlgebraError::Parse { line, msg: format!("expected {cols} entries, found {}", t.len()) });
            }
            for s in t {
                let i = names
                    .iter()
                    .position(|n| n == s)
                    .ok_or_else(|| AlgebraError::Parse { line, msg: format!("unknown element `{s}`") })?;
                out.push(i);
            }
        }
        Ok(out)
    }
}

fn num(line: usize, s: &str) -> Result<usize, AlgebraError> {
    s.parse().map_err(|_| AlgebraError::Parse { line, msg: format!("bad number `{s}`") })
}

fn group_body(c: &mut Cursor, n: usize) -> Result<GroupTable, AlgebraError> {
    let labels = c.labels(n)?;
    let mul = c.rows(n, n, &labels)?;
    GroupTable::from_mul(labels, mul)
}

/// `group <n>`, optional `labels ...`, then n rows of the multiplication table.
pub fn parse_group(text: &str) -> Result<GroupTable, AlgebraError> {
    let mut c = Cursor { lines: tokens(text), pos: 0 };
    let n = c.header("group", 1)?[0];
    let g = group_body(&mut c, n)?;
    c.done()?;
    Ok(g)
}

/// `gfamily <|X|> <|G|>`, optional carrier `labels`, then a `group` block,
/// then |G| blocks of |X| rows giving a ◁_g b with a as row and b as column.
pub fn parse_gfamily(text: &str) -> Result<GFamilyTable, AlgebraError> {
    let mut c = Cursor { lines: tokens(text), pos: 0 };
    let h = c.header("gfamily", 2)?;
    let (n, m) = (h[0], h[1]);
    let carrier = c.labels(n)?;
    let gm = c.header("group", 1)?[0];
    if gm != m {
        return Err(AlgebraError::Shape(format!("group block has order {gm}, header says {m}")));
    }
    let group = group_body(&mut c, m)?;
    let op = c.rows(m * n, n, &carrier)?;
    c.done()?;
    GFamilyTable::new(carrier, group, op)
}

pub fn parse_quandle(text: &str) -> Result<QuandleTable, AlgebraError> {
    let mut c = Cursor { lines: tokens(text), pos: 0 };
    let n = c.header("quandle", 1)?[0];
    let labels = c.labels(n)?;
    let op = c.rows(n, n, &labels)?;
    c.done()?;
    QuandleTable::new(labels, op)
}

fn write_rows(out: &mut String, n_rows: usize, n_cols: usize, names: &[String], at: impl Fn(usize, usize) -> usize) {
    for r in 0..n_rows {
        let row: Vec<&str> = (0..n_cols).map(|c| names[at(r, c)].as_str()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
}

fn default_labels(l: &[String]) -> bool {
    l.iter().enumerate().all(|(i, s)| *s == i.to_string())
}

pub fn serialize_group(g: &GroupTable) -> String {
    let mut out = format!("group {}\n", g.order());
    if !default_labels(g.labels()) {
        let _ = writeln!(out, "labels {}", g.labels().join(" "));
    }
    write_rows(&mut out, g.order(), g.order(), g.labels(), |a, b| g.mul(a, b));
    out
}

pub fn serialize_gfamily(f: &GFamilyTable) -> String {
    let n = f.carrier_size();
    let mut out = format!("gfamily {} {}\n", n, f.group().order());
    if !default_labels(f.carrier()) {
        let _ = writeln!(out, "labels {}", f.carrier().join(" "));
    }
    out.push_str(&serialize_group(f.group()));
    for g in 0..f.group().order() {
        let _ = writeln!(out, "# g = {}", f.group().labels()[g]);
        write_rows(&mut out, n, n, f.carrier(), |a, b| f.op(g, a, b));
    }
    out
}

pub fn serialize_quandle(q: &QuandleTable) -> String {
    let mut out = format!("quandle {}\n", q.size());
    if !default_labels(q.labels()) {
        let _ = writeln!(out, "labels {}", q.labels().join(" "));
    }
    write_rows(&mut out, q.size(), q.size(), q.labels(), |a, b| q.op(a, b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn units_mod(p: u32) -> Vec<Vec<u32>> {
        // every subgroup of the cyclic unit group, as the set of powers of some element
        let mut subs: Vec<Vec<u32>> = Vec::new();
        for gen in 1..p {
            let mut s = vec![1];
            let mut x = gen;
            while x != 1 {
                s.push(x);
                x = x * gen % p;
            }
            s.sort_unstable();
            if !subs.contains(&s) {
                subs.push(s);
            }
        }
        subs
    }

    #[test]
    fn z2_group_passes() {
        assert!(validate_group(&GroupTable::cyclic(2)).passed());
    }

    #[test]
    fn left_projection_is_not_a_group() {
        let g = GroupTable::from_mul(vec!["a".into(), "b".into()], vec![0, 0, 1, 1]).unwrap();
        let r = validate_group(&g);
        assert!(!r.passed());
        assert!(r.has_rule("identity"));
    }

    #[test]
    fn f3_units_form_a_group() {
        let g = parse_group("group 2\nlabels 1 2\n1 2\n2 1\n").unwrap();
        assert!(validate_group(&g).passed());
    }

    #[test]
    fn malformed_group_is_structural() {
        assert!(matches!(GroupTable::new(vec!["0".into()], vec![3], 0, vec![0]), Err(AlgebraError::OutOfRange { .. })));
        assert!(parse_group("group 2\n0 1\n").is_err());
    }

    #[test]
    fn r_tilde_entries() {
        let r = r_tilde();
        assert_eq!(r.op(1, 0, 1), 2);
        assert_eq!(r.op(0, 2, 1), 2);
        assert!(check_gfamily_axioms(&r).passed());
    }

    #[test]
    fn linear_families_pass() {
        for p in [2u32, 3, 5, 7] {
            for u in units_mod(p) {
                let f = linear_gfamily(p, &u).unwrap();
                assert!(check_gfamily_axioms(&f).passed(), "p={p} units={u:?}");
                let q = associated_quandle(&f).unwrap();
                assert!(check_quandle_axioms(&q).passed());
            }
        }
        let f = linear_gfamily(3, &[1]).unwrap();
        assert_eq!(f.group().order(), 1);
    }

    #[test]
    fn linear_family_rejects_non_subgroup() {
        assert!(linear_gfamily(5, &[1, 2]).is_err());
        assert!(linear_gfamily(4, &[1]).is_err());
    }

    #[test]
    fn corrupted_entry_is_caught() {
        let mut r = r_tilde();
        let v = r.op(1, 0, 1);
        r.set_op(1, 0, 1, (v + 1) % 3);
        let rep = check_gfamily_axioms(&r);
        assert!(!rep.passed());
        assert!(!rep.violations[0].witness.is_empty());
    }

    #[test]
    fn constant_family_passes() {
        let f = GFamilyTable::constant(4, GroupTable::cyclic(3));
        assert!(check_gfamily_axioms(&f).passed());
    }

    #[test]
    fn associated_quandle_of_r_tilde() {
        let r = r_tilde();
        let q = associated_quandle(&r).unwrap();
        assert_eq!(q.op(pair_index(&r, 0, 1), pair_index(&r, 1, 1)), pair_index(&r, 2, 1));
        for a in 0..3 {
            for g in 0..2 {
                assert_eq!(q.op(pair_index(&r, a, g), pair_index(&r, a, 0)), pair_index(&r, a, g));
            }
        }
        // second coordinate is the conjugate, and here equals g
        for x in 0..6 {
            for y in 0..6 {
                let (g, h) = (x % 2, y % 2);
                let z = q.op(x, y);
                assert_eq!(z % 2, r.group().conj(g, h));
                assert_eq!(z % 2, g);
            }
        }
    }

    #[test]
    fn left_inverse_via_inverse_element() {
        let r = r_tilde();
        let g = r.group();
        for a in 0..3 {
            for b in 0..3 {
                for x in 0..2 {
                    assert_eq!(r.op(g.inv(x), r.op(x, a, b), b), a);
                }
            }
        }
    }

    #[test]
    fn quandle_checks() {
        assert!(check_quandle_axioms(&QuandleTable::dihedral(3)).passed());
        let triv = QuandleTable::new((0..3).map(|i| i.to_string()).collect(), (0..9).map(|k| k / 3).collect()).unwrap();
        assert!(check_quandle_axioms(&triv).passed());
        let mut bad = QuandleTable::dihedral(3);
        bad.set_op(1, 1, 0);
        let r = check_quandle_axioms(&bad);
        assert!(r.has_rule("idempotence"));
        assert_eq!(r.violations[0].witness, vec![1]);
    }

    #[test]
    fn text_round_trip() {
        let r = r_tilde();
        let s = serialize_gfamily(&r);
        let back = parse_gfamily(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(serialize_gfamily(&back), s);
        let q = associated_quandle(&r).unwrap();
        assert_eq!(parse_quandle(&serialize_quandle(&q)).unwrap(), q);
        let g = linear_gfamily(7, &[1, 2, 4]).unwrap();
        assert_eq!(parse_gfamily(&serialize_gfamily(&g)).unwrap(), g);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = parse_gfamily("gfamily 2 1\ngroup 1\n0\n0 1\n1 x\n").unwrap_err();
        assert_eq!(e, AlgebraError::Parse { line: 5, msg: "unknown element `x`".into() });
    }
}
