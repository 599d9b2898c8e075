//! Elements of the Baxter monoid `baxt_n`, keyed by the invariant triple
//! (evaluation, left precedence, right precedence), together with the
//! involution `#` and the one-step rewriting of the presentation.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::words::{AWord, Letter};

/// Left precedence `(a, b, ℓ)`: `a` is the largest letter below `b` seen
/// before the first `b`, occurring `ℓ` times there.
pub type LeftPrecedence = (Letter, Letter, usize);
/// Right precedence `(b, a, r)`: `b` is the smallest letter above `a` seen
/// after the last `a`, occurring `r` times there.
pub type RightPrecedence = (Letter, Letter, usize);

/// Letter counts, indexed `0..n` for letters `1..=n`.
pub fn ev(w: &AWord) -> Vec<usize> {
    let mut counts = vec![0; w.rank() as usize];
    for &a in w.letters() {
        counts[a as usize - 1] += 1;
    }
    counts
}

/// Sorted by the larger letter, then the smaller.
pub fn rpi(w: &AWord) -> Vec<RightPrecedence> {
    let n = w.rank() as usize;
    let letters = w.letters();
    let mut last = vec![None; n + 1];
    for (p, &a) in letters.iter().enumerate() {
        last[a as usize] = Some(p);
    }
    let mut out = Vec::new();
    for (a, &slot) in last.iter().enumerate().skip(1) {
        let Some(p) = slot else { continue };
        let tail = &letters[p + 1..];
        if let Some(b) = tail.iter().copied().filter(|&c| c as usize > a).min() {
            let r = tail.iter().filter(|&&c| c == b).count();
            out.push((b, a as Letter, r));
        }
    }
    out.sort_by_key(|&(b, a, _)| (b, a));
    out
}

/// Sorted by the smaller letter, then the larger.
pub fn lpi(w: &AWord) -> Vec<LeftPrecedence> {
    let n = w.rank() as usize;
    let letters = w.letters();
    let mut first = vec![None; n + 1];
    for (p, &b) in letters.iter().enumerate().rev() {
        first[b as usize] = Some(p);
    }
    let mut out = Vec::new();
    for (b, &slot) in first.iter().enumerate().skip(1) {
        let Some(p) = slot else { continue };
        let head = &letters[..p];
        if let Some(a) = head.iter().copied().filter(|&c| (c as usize) < b).max() {
            let l = head.iter().filter(|&&c| c == a).count();
            out.push((a, b as Letter, l));
        }
    }
    out.sort_by_key(|&(a, b, _)| (a, b));
    out
}

/// The canonical key of a class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct BaxtKey {
    pub rank: u8,
    pub ev: Vec<usize>,
    pub lpi: Vec<LeftPrecedence>,
    pub rpi: Vec<RightPrecedence>,
}

/// A class of `baxt_n`. Equality and hashing go through the key only; the
/// representative is whichever word produced the element.
#[derive(Debug, Clone)]
pub struct BaxtElement {
    representative: AWord,
    key: BaxtKey,
}

impl BaxtElement {
    pub fn new(w: AWord) -> BaxtElement {
        let key = BaxtKey { rank: w.rank(), ev: ev(&w), lpi: lpi(&w), rpi: rpi(&w) };
        BaxtElement { representative: w, key }
    }

    pub fn identity(rank: u8) -> BaxtElement {
        BaxtElement::new(AWord::empty(rank))
    }

    pub fn rank(&self) -> u8 {
        self.key.rank
    }

    pub fn representative(&self) -> &AWord {
        &self.representative
    }

    pub fn key(&self) -> &BaxtKey {
        &self.key
    }

    pub fn ev(&self) -> &[usize] {
        &self.key.ev
    }

    pub fn lpi(&self) -> &[LeftPrecedence] {
        &self.key.lpi
    }

    pub fn rpi(&self) -> &[RightPrecedence] {
        &self.key.rpi
    }

    /// Support, ascending.
    pub fn support(&self) -> Vec<Letter> {
        (1..=self.rank()).filter(|&a| self.key.ev[a as usize - 1] > 0).collect()
    }

    pub fn multiply(&self, other: &BaxtElement) -> Result<BaxtElement> {
        Ok(BaxtElement::new(self.representative.concat(&other.representative)?))
    }

    pub fn sharp(&self) -> BaxtElement {
        BaxtElement::new(sharp_word(&self.representative))
    }
}

impl PartialEq for BaxtElement {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for BaxtElement {}

impl Hash for BaxtElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl fmt::Display for BaxtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.representative)
    }
}

impl Serialize for BaxtElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BaxtElement", 5)?;
        st.serialize_field("n", &self.key.rank)?;
        st.serialize_field("representative", &self.representative.letters())?;
        st.serialize_field("ev", &self.key.ev)?;
        let lpi: Vec<[usize; 3]> = self.key.lpi.iter().map(|&(a, b, l)| [a as usize, b as usize, l]).collect();
        let rpi: Vec<[usize; 3]> = self.key.rpi.iter().map(|&(b, a, r)| [b as usize, a as usize, r]).collect();
        st.serialize_field("lpi", &lpi)?;
        st.serialize_field("rpi", &rpi)?;
        st.end()
    }
}

pub fn canonical(w: &AWord) -> BaxtElement {
    BaxtElement::new(w.clone())
}

pub fn equivalent(u: &AWord, v: &AWord) -> Result<bool> {
    if u.rank() != v.rank() {
        return Err(Error::RankMismatch(u.rank(), v.rank()));
    }
    Ok(u.len() == v.len() && canonical(u) == canonical(v))
}

/// Reverse the word and send `i` to `n + 1 - i`.
pub fn sharp_word(w: &AWord) -> AWord {
    let n = w.rank();
    AWord::new(n, w.letters().iter().rev().map(|&a| n + 1 - a).collect()).expect("complement stays in range")
}

/// Words reachable from `w` by one application of a defining relation.
pub fn rewrite_neighbors(w: &AWord) -> BTreeSet<AWord> {
    let l = w.letters();
    let mut out = BTreeSet::new();
    for p in 0..l.len().saturating_sub(1) {
        let (x, y) = (l[p], l[p + 1]);
        if x == y {
            continue;
        }
        let (a, d) = (x.min(y), x.max(y));
        let left = &l[..p];
        let right = &l[p + 2..];
        // c on the left, b on the right with a <= b < c <= d.
        let first = left.iter().any(|&c| c > a && c <= d && right.iter().any(|&b| b >= a && b < c));
        // b on the left, c on the right with a < b <= c < d.
        let second = left.iter().any(|&b| b > a && b < d && right.iter().any(|&c| c >= b && c < d));
        if first || second {
            let mut v = l.to_vec();
            v.swap(p, p + 1);
            out.insert(AWord::new(w.rank(), v).unwrap());
        }
    }
    out
}

/// All words reachable from `w` by repeated rewriting.
pub fn rewrite_closure(w: &AWord) -> BTreeSet<AWord> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([w.clone()]);
    seen.insert(w.clone());
    while let Some(u) = queue.pop_front() {
        for v in rewrite_neighbors(&u) {
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Distinct classes among `words`, keeping the first representative seen.
pub fn classes<'a>(words: impl IntoIterator<Item = &'a AWord>) -> Vec<BaxtElement> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for w in words {
        let e = canonical(w);
        if seen.insert(e.key.clone()) {
            out.push(e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn aw(s: &str, n: u8) -> AWord {
        AWord::parse(s, n).unwrap()
    }

    #[test]
    fn invariants_of_worked_word() {
        let w = aw("36131512665", 6);
        assert_eq!(rpi(&w), vec![(2, 1, 1), (5, 2, 1), (5, 3, 2)]);
        assert_eq!(lpi(&w), vec![(1, 2, 3), (3, 5, 2), (3, 6, 1)]);
        assert_eq!(ev(&w), vec![3, 1, 2, 0, 2, 3]);
    }

    #[test]
    fn small_invariants() {
        assert!(rpi(&AWord::empty(3)).is_empty());
        assert!(rpi(&aw("21", 2)).is_empty());
        assert_eq!(lpi(&aw("12", 2)), vec![(1, 2, 1)]);
        assert!(lpi(&aw("1111", 1)).is_empty());
        assert_eq!(ev(&aw("111", 3)), vec![3, 0, 0]);
    }

    #[test]
    fn equivalence_examples() {
        assert!(equivalent(&aw("2121", 2), &aw("2211", 2)).unwrap());
        assert!(!equivalent(&aw("12", 2), &aw("21", 2)).unwrap());
        assert!(equivalent(&AWord::empty(2), &AWord::empty(2)).unwrap());
        assert!(matches!(equivalent(&aw("1", 2), &aw("1", 3)), Err(Error::RankMismatch(2, 3))));
    }

    #[test]
    fn multiplication_examples() {
        let one = canonical(&aw("1", 2));
        let two = canonical(&aw("2", 2));
        assert_eq!(one.multiply(&two).unwrap(), canonical(&aw("12", 2)));
        let e = canonical(&aw("2121", 2));
        assert_eq!(e.multiply(&BaxtElement::identity(2)).unwrap(), e);
        let t = canonical(&aw("21", 2));
        let tt = t.multiply(&t).unwrap();
        assert_eq!(tt, canonical(&aw("2121", 2)));
        assert_eq!(tt, canonical(&aw("2211", 2)));
        assert!(one.multiply(&canonical(&aw("1", 3))).is_err());
    }

    #[test]
    fn sharp_examples() {
        assert_eq!(sharp_word(&aw("112", 2)), aw("122", 2));
        assert_eq!(sharp_word(&aw("123", 3)), aw("123", 3));
    }

    #[test]
    fn rewrite_examples() {
        assert!(rewrite_neighbors(&aw("2121", 2)).contains(&aw("2211", 2)));
        assert!(rewrite_neighbors(&aw("11", 1)).is_empty());
        assert!(rewrite_neighbors(&aw("12", 2)).is_empty());
    }

    #[test]
    fn json_form() {
        let e = canonical(&aw("1212", 2));
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["representative"], serde_json::json!([1, 2, 1, 2]));
        assert_eq!(v["ev"], serde_json::json!([2, 2]));
        assert_eq!(v["lpi"], serde_json::json!([[1, 2, 1]]));
        assert_eq!(v["rpi"], serde_json::json!([[2, 1, 1]]));
        let v = serde_json::to_value(canonical(&aw("2121", 2))).unwrap();
        assert_eq!(v["lpi"], serde_json::json!([]));
    }

    #[test]
    fn only_order_reversal_is_compatible_at_rank_two() {
        let words = AWord::enumerate(2, 5);
        let compatible = |sigma: [Letter; 2]| {
            let map = |w: &AWord| {
                AWord::new(2, w.letters().iter().rev().map(|&a| sigma[a as usize - 1]).collect()).unwrap()
            };
            words.iter().all(|u| rewrite_neighbors(u).iter().all(|v| equivalent(&map(u), &map(v)).unwrap()))
                && words.iter().all(|u| {
                    words.iter().filter(|v| v.len() == u.len()).all(|v| {
                        equivalent(u, v).unwrap() == equivalent(&map(u), &map(v)).unwrap()
                    })
                })
        };
        assert!(!compatible([1, 2]));
        assert!(compatible([2, 1]));
    }

    fn word(n: u8, max: usize) -> impl Strategy<Value = AWord> {
        proptest::collection::vec(1..=n, 0..max).prop_map(move |l| AWord::new(n, l).unwrap())
    }

    proptest! {
        #[test]
        fn precedence_shape(w in word(6, 25)) {
            // At most one right precedence per smaller letter, one left
            // precedence per larger letter.
            let r = rpi(&w);
            let lows: BTreeSet<Letter> = r.iter().map(|t| t.1).collect();
            prop_assert_eq!(lows.len(), r.len());
            let l = lpi(&w);
            let highs: BTreeSet<Letter> = l.iter().map(|t| t.1).collect();
            prop_assert_eq!(highs.len(), l.len());
        }

        #[test]
        fn sharp_is_an_anti_automorphism(u in word(4, 12), v in word(4, 12)) {
            let (a, b) = (canonical(&u), canonical(&v));
            prop_assert_eq!(a.sharp().sharp(), a.clone());
            prop_assert_eq!(a.multiply(&b).unwrap().sharp(), b.sharp().multiply(&a.sharp()).unwrap());
        }

        #[test]
        fn rewriting_preserves_the_class(w in word(4, 10)) {
            let e = canonical(&w);
            for v in rewrite_neighbors(&w) {
                prop_assert_eq!(canonical(&v), e.clone());
                prop_assert_eq!(canonical(&sharp_word(&v)), canonical(&sharp_word(&w)));
            }
        }

        #[test]
        fn multiplication_is_associative(u in word(3, 8), v in word(3, 8), w in word(3, 8)) {
            let (a, b, c) = (canonical(&u), canonical(&v), canonical(&w));
            prop_assert_eq!(a.multiply(&b).unwrap().multiply(&c).unwrap(), a.multiply(&b.multiply(&c).unwrap()).unwrap());
        }
    }
}
