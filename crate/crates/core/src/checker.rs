//! Decision procedure for word identities of `(baxt_n, #)`, stratified by
//! rank, plus the check for plain (star-free) identities.
//!
//! Ranks 2 and 3 are decided pair by pair on the restrictions `u[x, y]`
//! through their single-letter prefixes/suffixes (`pre`, `suf`) and their
//! longest prefixes/suffixes free of mixed pairs `{x, x*}` (`pren`, `sufn`),
//! together with directional occurrence counts. Ranks 4 and up only need the
//! directional counts.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{BaseVar, IVar, IWord, Identity};

/// Which identities are being decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Identities of the involution monoid `(baxt_n, #)`.
    Involution,
    /// Star-free identities of the plain monoid `baxt_n`.
    Plain,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "involution" => Ok(Mode::Involution),
            "plain" => Ok(Mode::Plain),
            other => Err(Error::Invalid(format!("unknown mode {other:?}"))),
        }
    }
}

/// The family of conditions a failing identity violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    /// Letter counts differ.
    Balanced,
    /// A block `x^α` bordered by its own star partner moved.
    I,
    /// A block `y^α` bordered by another variable moved.
    II,
    /// The stretch before (after) the first (last) mixed pair changed.
    III,
    /// Combined counts of `x` and `x*` beside a pivot differ.
    IV,
    /// Separate counts of `x` and `x*` beside a pivot differ.
    V,
    /// Counts of one letter before the first or after the last occurrence
    /// of another differ.
    OccLR,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Where a violated condition was detected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Variables involved: the restriction bases, or the letters `x, y`.
    pub vars: Vec<String>,
    pub side: Side,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub verdict: bool,
    #[serde(rename = "n")]
    pub rank: u8,
    pub mode: Mode,
    pub violated: Option<Condition>,
    pub witness: Option<Witness>,
}

type Failure = (Condition, Witness);

fn fail(cond: Condition, vars: Vec<String>, side: Side, detail: String) -> Failure {
    (cond, Witness { vars, side, detail })
}

fn show(w: &[IVar]) -> String {
    IWord(w.to_vec()).to_string()
}

fn show_opt(v: Option<IVar>) -> String {
    v.map_or_else(|| "nothing".to_string(), |v| v.to_string())
}

/// Longest prefix over a single letter.
pub fn pre(u: &IWord) -> IWord {
    IWord(u.0[..pre_len(&u.0)].to_vec())
}

/// Longest suffix over a single letter.
pub fn suf(u: &IWord) -> IWord {
    IWord(u.0[u.len() - suf_len(&u.0)..].to_vec())
}

/// Longest prefix containing no mixed pair `{x, x*}`.
pub fn pren(u: &IWord) -> IWord {
    IWord(u.0[..pren_len(u.0.iter().copied())].to_vec())
}

/// Longest suffix containing no mixed pair.
pub fn sufn(u: &IWord) -> IWord {
    IWord(u.0[u.len() - pren_len(u.0.iter().rev().copied())..].to_vec())
}

fn pre_len(u: &[IVar]) -> usize {
    match u.first() {
        None => 0,
        Some(&a) => u.iter().take_while(|&&v| v == a).count(),
    }
}

fn suf_len(u: &[IVar]) -> usize {
    match u.last() {
        None => 0,
        Some(&a) => u.iter().rev().take_while(|&&v| v == a).count(),
    }
}

fn pren_len(letters: impl Iterator<Item = IVar>) -> usize {
    let mut seen: Vec<IVar> = Vec::new();
    let mut n = 0;
    for v in letters {
        if seen.contains(&v.star()) {
            break;
        }
        if !seen.contains(&v) {
            seen.push(v);
        }
        n += 1;
    }
    n
}

/// Multiset of a short segment, sorted.
fn multiset(seg: impl Iterator<Item = IVar>) -> Vec<(IVar, usize)> {
    let mut m: BTreeMap<IVar, usize> = BTreeMap::new();
    for v in seg {
        *m.entry(v).or_insert(0) += 1;
    }
    m.into_iter().collect()
}

pub fn is_balanced(id: &Identity) -> bool {
    crate::words::occurrences(&id.lhs) == crate::words::occurrences(&id.rhs)
}

fn balanced_failure(id: &Identity) -> Option<Failure> {
    let lu = crate::words::occurrences(&id.lhs);
    let lv = crate::words::occurrences(&id.rhs);
    if lu == lv {
        return None;
    }
    let mut letters: Vec<IVar> = lu.keys().chain(lv.keys()).copied().collect();
    letters.sort_by_cached_key(|v| v.sort_key());
    letters.dedup();
    let x = letters.into_iter().find(|x| lu.get(x) != lv.get(x)).unwrap();
    let (a, b) = (lu.get(&x).copied().unwrap_or(0), lv.get(&x).copied().unwrap_or(0));
    Some(fail(Condition::Balanced, vec![x.to_string()], Side::Left, format!("{x} occurs {a} times on the left, {b} on the right")))
}

/// Positions of every letter, and helpers for directional counts.
struct Index<'a> {
    word: &'a [IVar],
    positions: HashMap<IVar, Vec<usize>>,
    by_base: HashMap<BaseVar, Vec<usize>>,
}

impl<'a> Index<'a> {
    fn new(word: &'a IWord) -> Self {
        let mut positions: HashMap<IVar, Vec<usize>> = HashMap::new();
        let mut by_base: HashMap<BaseVar, Vec<usize>> = HashMap::new();
        for (i, &v) in word.0.iter().enumerate() {
            positions.entry(v).or_default().push(i);
            by_base.entry(v.base).or_default().push(i);
        }
        Index { word: &word.0, positions, by_base }
    }

    fn has(&self, v: IVar) -> bool {
        self.positions.contains_key(&v)
    }

    /// Occurrences of `x` before the first `y`; `y` must be present.
    fn before(&self, y: IVar, x: IVar) -> usize {
        let first = self.positions[&y][0];
        self.positions.get(&x).map_or(0, |p| p.partition_point(|&i| i < first))
    }

    /// Occurrences of `x` after the last `y`; `y` must be present.
    fn after(&self, y: IVar, x: IVar) -> usize {
        let last = *self.positions[&y].last().unwrap();
        self.positions.get(&x).map_or(0, |p| p.len() - p.partition_point(|&i| i <= last))
    }

    /// `u[p, q]` (or `u[p]` when `q` is `None`).
    fn restrict(&self, p: BaseVar, q: Option<BaseVar>) -> Vec<IVar> {
        let empty = Vec::new();
        let a = self.by_base.get(&p).unwrap_or(&empty);
        let b = q.and_then(|q| self.by_base.get(&q)).unwrap_or(&empty);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i] < b[j]) {
                out.push(self.word[a[i]]);
                i += 1;
            } else {
                out.push(self.word[b[j]]);
                j += 1;
            }
        }
        out
    }
}

/// Base groups to scan: every base on its own, then every pair, each in
/// name order.
fn base_groups(id: &Identity) -> Vec<(BaseVar, Option<BaseVar>)> {
    let bases = id.bases();
    let mut out = Vec::new();
    for (i, &p) in bases.iter().enumerate() {
        out.push((p, None));
        for &q in &bases[i + 1..] {
            out.push((p, Some(q)));
        }
    }
    out
}

fn group_names(p: BaseVar, q: Option<BaseVar>) -> Vec<String> {
    std::iter::once(p).chain(q).map(|b| b.name().to_string()).collect()
}

/// Compares the single-letter prefixes of `r`, `s` and the letters right
/// after them. `r`, `s` are given in reading order for the side checked.
fn block_check(r: &[IVar], s: &[IVar], vars: &[String], side: Side) -> Option<Failure> {
    let (lr, ls) = (pre_len(r), pre_len(s));
    let (fr, fs) = (r.get(lr).copied(), s.get(ls).copied());
    if r[..lr] == s[..ls] && fr == fs {
        return None;
    }
    let partner = |seg: &[IVar], next: Option<IVar>| seg.first().is_some_and(|&a| next == Some(a.star()));
    let cond = if partner(&r[..lr], fr) || partner(&s[..ls], fs) { Condition::I } else { Condition::II };
    let name = if side == Side::Left { "prefix" } else { "suffix" };
    let (mut sr, mut ss) = (r[..lr].to_vec(), s[..ls].to_vec());
    if side == Side::Right {
        sr.reverse();
        ss.reverse();
    }
    Some(fail(
        cond,
        vars.to_vec(),
        side,
        format!(
            "single-letter {name} {} then {} versus {} then {}",
            show(&sr),
            show_opt(fr),
            show(&ss),
            show_opt(fs)
        ),
    ))
}

/// Compares the mixed-pair-free prefixes as multisets, and optionally the
/// letters right after them.
fn segment_check(r: &[IVar], s: &[IVar], with_next: bool, vars: &[String], side: Side) -> Option<Failure> {
    let (lr, ls) = (pren_len(r.iter().copied()), pren_len(s.iter().copied()));
    let (mr, ms) = (multiset(r[..lr].iter().copied()), multiset(s[..ls].iter().copied()));
    let (fr, fs) = (r.get(lr).copied(), s.get(ls).copied());
    if mr == ms && (!with_next || fr == fs) {
        return None;
    }
    let name = if side == Side::Left { "prefix" } else { "suffix" };
    let (mut sr, mut ss) = (r[..lr].to_vec(), s[..ls].to_vec());
    if side == Side::Right {
        sr.reverse();
        ss.reverse();
    }
    let detail = if mr != ms {
        format!("mixed-pair-free {name}es {} and {} are not permutations of each other", show(&sr), show(&ss))
    } else {
        format!("mixed-pair-free {name} followed by {} versus {}", show_opt(fr), show_opt(fs))
    };
    Some(fail(Condition::III, vars.to_vec(), side, detail))
}

/// Letters of `con(u)` with base `b`.
fn letters_of(ix: &Index, b: BaseVar) -> Vec<IVar> {
    [IVar { base: b, starred: false }, IVar { base: b, starred: true }].into_iter().filter(|&v| ix.has(v)).collect()
}

/// Conditions (IV) and (V) for pivots `y` of one base and counted letters
/// of another, on one side.
fn count_checks(iu: &Index, iv: &Index, xb: BaseVar, yb: BaseVar, side: Side) -> Option<Failure> {
    let count = |ix: &Index, y: IVar, x: IVar| match side {
        Side::Left => ix.before(y, x),
        Side::Right => ix.after(y, x),
    };
    let dir = if side == Side::Left { "before the first" } else { "after the last" };
    let (x, xs) = (IVar { base: xb, starred: false }, IVar { base: xb, starred: true });
    for y in letters_of(iu, yb) {
        let su = count(iu, y, x) + count(iu, y, xs);
        let sv = count(iv, y, x) + count(iv, y, xs);
        if su != sv {
            return Some(fail(
                Condition::IV,
                vec![x.to_string(), y.to_string()],
                side,
                format!("{x} and {xs} together occur {su} versus {sv} times {dir} {y}"),
            ));
        }
        if count(iu, y, y.star()) == 0 || count(iv, y, y.star()) == 0 {
            for z in [x, xs] {
                let (a, b) = (count(iu, y, z), count(iv, y, z));
                if a != b {
                    return Some(fail(
                        Condition::V,
                        vec![z.to_string(), y.to_string()],
                        side,
                        format!("{z} occurs {a} versus {b} times {dir} {y}"),
                    ));
                }
            }
        }
    }
    None
}

fn report(rank: u8, mode: Mode, failure: Option<Failure>) -> CheckReport {
    match failure {
        None => CheckReport { verdict: true, rank, mode, violated: None, witness: None },
        Some((c, w)) => CheckReport { verdict: false, rank, mode, violated: Some(c), witness: Some(w) },
    }
}

/// `(baxt_1, #)`: the bar-images must be balanced.
pub fn check_baxt1(id: &Identity) -> CheckReport {
    let bar = Identity::new(crate::words::bar(&id.lhs), crate::words::bar(&id.rhs));
    report(1, Mode::Involution, balanced_failure(&bar))
}

fn check_low_rank(id: &Identity, rank: u8) -> CheckReport {
    let strict = rank >= 3;
    let failure = balanced_failure(id).or_else(|| {
        let (iu, iv) = (Index::new(&id.lhs), Index::new(&id.rhs));
        base_groups(id).into_iter().find_map(|(p, q)| {
            let vars = group_names(p, q);
            let r = iu.restrict(p, q);
            let s = iv.restrict(p, q);
            let (rr, sr): (Vec<IVar>, Vec<IVar>) = (r.iter().rev().copied().collect(), s.iter().rev().copied().collect());
            let counts = |side| {
                let q = q?;
                if !strict {
                    return None;
                }
                count_checks(&iu, &iv, p, q, side).or_else(|| count_checks(&iu, &iv, q, p, side))
            };
            block_check(&r, &s, &vars, Side::Left)
                .or_else(|| segment_check(&r, &s, strict, &vars, Side::Left))
                .or_else(|| counts(Side::Left))
                .or_else(|| block_check(&rr, &sr, &vars, Side::Right))
                .or_else(|| segment_check(&rr, &sr, strict, &vars, Side::Right))
                .or_else(|| counts(Side::Right))
        })
    });
    report(rank, Mode::Involution, failure)
}

/// `(baxt_2, #)`.
pub fn check_baxt2(id: &Identity) -> CheckReport {
    check_low_rank(id, 2)
}

/// `(baxt_3, #)`.
pub fn check_baxt3(id: &Identity) -> CheckReport {
    check_low_rank(id, 3)
}

fn occ_lr_failure(id: &Identity) -> Option<Failure> {
    let (iu, iv) = (Index::new(&id.lhs), Index::new(&id.rhs));
    let mut letters: Vec<IVar> = iu.positions.keys().copied().collect();
    letters.sort_by_cached_key(|v| v.sort_key());
    for side in [Side::Left, Side::Right] {
        for &x in &letters {
            for &y in &letters {
                if x == y {
                    continue;
                }
                let (a, b) = match side {
                    Side::Left => (iu.before(x, y), iv.before(x, y)),
                    Side::Right => (iu.after(x, y), iv.after(x, y)),
                };
                if a != b {
                    let dir = if side == Side::Left { "before the first" } else { "after the last" };
                    return Some(fail(
                        Condition::OccLR,
                        vec![x.to_string(), y.to_string()],
                        side,
                        format!("{y} occurs {a} versus {b} times {dir} {x}"),
                    ));
                }
            }
        }
    }
    None
}

/// `(baxt_n, #)` for any `n ≥ 4`; the verdict does not depend on `n`.
pub fn check_baxt4plus(id: &Identity, rank: u8) -> CheckReport {
    report(rank, Mode::Involution, balanced_failure(id).or_else(|| occ_lr_failure(id)))
}

/// Plain identities of `baxt_n`, `n ≥ 2`.
pub fn check_plain(id: &Identity, rank: u8) -> Result<CheckReport> {
    if let Some(v) = id.lhs.0.iter().chain(&id.rhs.0).find(|v| v.starred) {
        return Err(Error::StarInPlain(v.to_string()));
    }
    let failure = balanced_failure(id).or_else(|| if rank >= 2 { occ_lr_failure(id) } else { None });
    Ok(report(rank, Mode::Plain, failure))
}

/// Decides `id` in `(baxt_n, #)` or, in plain mode, in `baxt_n`.
pub fn check(id: &Identity, rank: u8, mode: Mode) -> Result<CheckReport> {
    if rank == 0 {
        return Err(Error::BadRank { rank: 0, min: 1 });
    }
    match mode {
        Mode::Plain => check_plain(id, rank),
        Mode::Involution => Ok(match rank {
            1 => check_baxt1(id),
            2 => check_baxt2(id),
            3 => check_baxt3(id),
            n => check_baxt4plus(id, n),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> IWord {
        IWord::parse(s).unwrap()
    }

    fn id(s: &str) -> Identity {
        Identity::parse(s).unwrap()
    }

    fn yes(s: &str, n: u8) -> bool {
        check(&id(s), n, Mode::Involution).unwrap().verdict
    }

    #[test]
    fn segmentations() {
        assert_eq!(pre(&w("x x x y z")), w("x x x"));
        assert_eq!(suf(&w("x y z z")), w("z z"));
        assert_eq!(pren(&w("x* y* x z")), w("x* y*"));
        assert_eq!(sufn(&w("z x y* y")), w("y"));
        assert_eq!(pren(&w("x y z")), w("x y z"));
    }

    #[test]
    fn balance() {
        assert!(is_balanced(&id("x y ~= y x")));
        assert!(!is_balanced(&id("x y ~= x y y")));
        assert!(is_balanced(&id("x x* ~= x* x")));
        assert!(!is_balanced(&id("x x* ~= x x")));
    }

    #[test]
    fn rank_one() {
        assert!(yes("x x* ~= x x", 1));
        assert!(!yes("x ~= x x", 1));
        assert!(yes("x y ~= y* x", 1));
    }

    #[test]
    fn rank_two() {
        assert!(yes("x h y k x y s x t y ~= x h y k y x s x t y", 2));
        assert!(!yes("x y ~= y x", 2));
        assert!(!yes("x x* y y* ~= x x* y* y", 2));
        assert!(!yes("x x* ~= x* x", 2));
    }

    #[test]
    fn rank_three() {
        assert!(yes("x1* x2* x3* x4* x x* x* x1 x2 x3 x4 x x* x x1* x3* x2* x4* ~= x1* x2* x3* x4* x x* x x1 x2 x3 x4 x* x* x x1* x3* x2* x4*", 3));
        // Holds at rank 2 only: x -> 1, y -> 2 separates the sides at rank 3.
        assert!(yes("x* h x k x y s x* t x ~= x* h x k y x s x* t x", 2));
        let r = check(&id("x* h x k x y s x* t x ~= x* h x k y x s x* t x"), 3, Mode::Involution).unwrap();
        assert_eq!(r.violated, Some(Condition::IV));
        let r = check(&id("x x* y y* ~= y y* x x*"), 3, Mode::Involution).unwrap();
        assert!(!r.verdict);
    }

    #[test]
    fn rank_four_and_up() {
        assert!(yes("x h y k x y s x t y ~= x h y k y x s x t y", 4));
        assert!(yes("x y z ~= x y z", 7));
        let r = check(&id("x y ~= y x"), 4, Mode::Involution).unwrap();
        assert_eq!(r.violated, Some(Condition::OccLR));
        assert!(yes("x(x*)* ~= x x", 4));
    }

    #[test]
    fn plain_mode() {
        assert!(check(&id("x h y k x y s x t y ~= x h y k y x s x t y"), 2, Mode::Plain).unwrap().verdict);
        assert!(!check(&id("x y ~= y x"), 2, Mode::Plain).unwrap().verdict);
        assert!(!check(&id("x y x ~= x x y"), 3, Mode::Plain).unwrap().verdict);
        assert!(matches!(check(&id("x* ~= x*"), 2, Mode::Plain), Err(Error::StarInPlain(_))));
    }

    #[test]
    fn report_json() {
        let r = check(&id("x y ~= y x"), 4, Mode::Involution).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["verdict"], false);
        assert_eq!(v["n"], 4);
        assert_eq!(v["mode"], "involution");
        assert_eq!(v["violated"], "OccLR");
        assert!(v["witness"]["detail"].is_string());
    }
}
