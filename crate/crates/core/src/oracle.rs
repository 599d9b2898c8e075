//! Ground truth by substitution: exhaustive and sampled search for a
//! falsifying assignment in `(baxt_n, #)`, and evaluation in the free
//! commutative involution monoid on one generator pair.

use std::collections::{BTreeMap, HashMap};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::baxter::{classes, sharp_word, BaxtElement, BaxtKey};
use crate::error::{Error, Result};
use crate::words::{AWord, BaseVar, IWord, Identity, Letter};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// An assignment of base variables to elements of `baxt_n`; starred
/// variables go to the sharp of the base image.
#[derive(Debug, Clone)]
pub struct Substitution {
    rank: u8,
    map: HashMap<BaseVar, BaxtElement>,
}

impl Substitution {
    pub fn new(rank: u8) -> Substitution {
        Substitution { rank, map: HashMap::new() }
    }

    pub fn assign(&mut self, x: BaseVar, image: AWord) -> Result<()> {
        if image.rank() != self.rank {
            return Err(Error::RankMismatch(self.rank, image.rank()));
        }
        self.map.insert(x, BaxtElement::new(image));
        Ok(())
    }

    pub fn with(mut self, name: &str, image: AWord) -> Result<Substitution> {
        self.assign(BaseVar::new(name), image)?;
        Ok(self)
    }

    pub fn get(&self, x: BaseVar) -> Option<&BaxtElement> {
        self.map.get(&x)
    }

    /// The image of `u`.
    pub fn evaluate(&self, u: &IWord) -> Result<BaxtElement> {
        let mut letters = Vec::new();
        for v in u.letters() {
            let e = self.map.get(&v.base).ok_or_else(|| Error::Unassigned(v.base.name().to_string()))?;
            if v.starred {
                letters.extend_from_slice(sharp_word(e.representative()).letters());
            } else {
                letters.extend_from_slice(e.representative().letters());
            }
        }
        AWord::new(self.rank, letters).map(BaxtElement::new)
    }
}

/// Whether both sides of `id` have the same image under `sub`.
pub fn eval_substitution(id: &Identity, sub: &Substitution) -> Result<bool> {
    Ok(sub.evaluate(&id.lhs)? == sub.evaluate(&id.rhs)?)
}

/// A falsifying substitution with the keys of the two images.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleWitness {
    pub assignment: BTreeMap<String, String>,
    pub lhs_key: BaxtKey,
    pub rhs_key: BaxtKey,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum OracleVerdict {
    Refuted { witness: OracleWitness },
    /// Nothing found among the `tried` assignments; not a proof.
    NoCounterexample { tried: u64 },
}

impl OracleVerdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, OracleVerdict::Refuted { .. })
    }

    pub fn witness(&self) -> Option<&OracleWitness> {
        match self {
            OracleVerdict::Refuted { witness } => Some(witness),
            OracleVerdict::NoCounterexample { .. } => None,
        }
    }
}

/// Image length bound used when none is given: 3 for at most two base
/// variables, 2 for three or four, 1 beyond.
pub fn default_max_len(bases: usize) -> usize {
    match bases {
        0..=2 => 3,
        3..=4 => 2,
        _ => 1,
    }
}

/// Letter counts with the left and right precedences indexed by letter, so
/// that two words can be compared without building their keys.
#[derive(Default)]
struct Profile {
    ev: Vec<u32>,
    left: Vec<(Letter, u32)>,
    right: Vec<(Letter, u32)>,
    seen: Vec<u32>,
}

impl Profile {
    fn fill(&mut self, letters: &[Letter], rank: u8) {
        let n = rank as usize + 1;
        for v in [&mut self.left, &mut self.right] {
            v.clear();
            v.resize(n, (0, 0));
        }
        self.ev.clear();
        self.ev.resize(n, 0);
        for &b in letters {
            let b = b as usize;
            if self.ev[b] == 0 {
                if let Some(a) = (1..b).rev().find(|&a| self.ev[a] > 0) {
                    self.left[b] = (a as Letter, self.ev[a]);
                }
            }
            self.ev[b] += 1;
        }
        let seen = &mut self.seen;
        seen.clear();
        seen.resize(n, 0);
        for &a in letters.iter().rev() {
            let a = a as usize;
            if seen[a] == 0 {
                if let Some(b) = (a + 1..n).find(|&b| seen[b] > 0) {
                    self.right[a] = (b as Letter, seen[b]);
                }
            }
            seen[a] += 1;
        }
    }
}

#[derive(Default)]
struct Scratch {
    lhs: Vec<Letter>,
    rhs: Vec<Letter>,
    lp: Profile,
    rp: Profile,
}

/// An identity with each letter replaced by its base's slot in the
/// assignment vector.
struct Compiled {
    lhs: Vec<(usize, bool)>,
    rhs: Vec<(usize, bool)>,
}

impl Compiled {
    fn new(id: &Identity, bases: &[BaseVar]) -> Compiled {
        let slots: HashMap<BaseVar, usize> = bases.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let side = |u: &IWord| u.letters().iter().map(|v| (slots[&v.base], v.starred)).collect();
        Compiled { lhs: side(&id.lhs), rhs: side(&id.rhs) }
    }
}

/// Classes of `A_n^{≤L}` in length-then-lexicographic order of their first
/// representative, with the letters of each image and of its sharp.
struct Grid {
    rank: u8,
    images: Vec<(Vec<Letter>, Vec<Letter>)>,
}

impl Grid {
    fn new(rank: u8, max_len: usize) -> Grid {
        let words = AWord::enumerate(rank, max_len);
        let images = classes(&words)
            .into_iter()
            .map(|e| (e.representative().letters().to_vec(), sharp_word(e.representative()).letters().to_vec()))
            .collect();
        Grid { rank, images }
    }

    fn image_into(&self, side: &[(usize, bool)], choice: &[usize], out: &mut Vec<Letter>) {
        out.clear();
        for &(slot, starred) in side {
            let (w, s) = &self.images[choice[slot]];
            out.extend_from_slice(if starred { s } else { w });
        }
    }

    fn key(&self, letters: &[Letter]) -> BaxtKey {
        BaxtElement::new(AWord::new(self.rank, letters.to_vec()).expect("grid letters are in range")).key().clone()
    }

    /// The two keys when `choice` falsifies the identity.
    fn falsifies(&self, id: &Compiled, choice: &[usize], s: &mut Scratch) -> Option<(BaxtKey, BaxtKey)> {
        self.image_into(&id.lhs, choice, &mut s.lhs);
        self.image_into(&id.rhs, choice, &mut s.rhs);
        if s.lhs == s.rhs {
            return None;
        }
        if s.lhs.len() == s.rhs.len() {
            s.lp.fill(&s.lhs, self.rank);
            s.rp.fill(&s.rhs, self.rank);
            if s.lp.ev == s.rp.ev && s.lp.left == s.rp.left && s.lp.right == s.rp.right {
                return None;
            }
        }
        Some((self.key(&s.lhs), self.key(&s.rhs)))
    }

    fn witness(&self, bases: &[BaseVar], choice: &[usize], keys: (BaxtKey, BaxtKey)) -> OracleWitness {
        let assignment = bases
            .iter()
            .zip(choice)
            .map(|(b, &c)| (b.name().to_string(), AWord::new(self.rank, self.images[c].0.clone()).unwrap().to_string()))
            .collect();
        OracleWitness { assignment, lhs_key: keys.0, rhs_key: keys.1 }
    }
}

fn digits(mut index: u64, radix: usize, places: usize) -> Vec<usize> {
    let mut out = vec![0; places];
    for slot in out.iter_mut().rev() {
        *slot = (index % radix as u64) as usize;
        index /= radix as u64;
    }
    out
}

fn check_rank(rank: u8) -> Result<()> {
    if rank == 0 {
        return Err(Error::BadRank { rank: rank.into(), min: 1 });
    }
    Ok(())
}

/// Tries every assignment of the bases of `id` (sorted by name) to classes
/// of `A_n^{≤ max_len}`, the unit included. The reported witness is the
/// first falsifying assignment in enumeration order, with the first base as
/// the most significant digit.
pub fn brute_force_check(id: &Identity, rank: u8, max_len: usize, budget: u64) -> Result<OracleVerdict> {
    check_rank(rank)?;
    let grid = Grid::new(rank, max_len);
    let bases = id.bases();
    let radix = grid.images.len();
    let needed = (radix as u128).checked_pow(bases.len() as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let total = needed as u64;
    let compiled = Compiled::new(id, &bases);
    let found = (0..total)
        .into_par_iter()
        .map_init(Scratch::default, |scratch, index| {
            let choice = digits(index, radix, bases.len());
            grid.falsifies(&compiled, &choice, scratch).map(|keys| (choice, keys))
        })
        .find_first(Option::is_some)
        .flatten();
    Ok(match found {
        Some((choice, keys)) => OracleVerdict::Refuted { witness: grid.witness(&bases, &choice, keys) },
        None => OracleVerdict::NoCounterexample { tried: total },
    })
}

/// Uniformly samples `samples` assignments from the same grid as
/// [`brute_force_check`]; reproducible for a fixed seed.
pub fn sampled_check(id: &Identity, rank: u8, max_len: usize, samples: u64, seed: u64) -> Result<OracleVerdict> {
    check_rank(rank)?;
    let grid = Grid::new(rank, max_len);
    let bases = id.bases();
    let compiled = Compiled::new(id, &bases);
    let mut scratch = Scratch::default();
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let choice: Vec<usize> = bases.iter().map(|_| rng.gen_range(0..grid.images.len())).collect();
        if let Some(keys) = grid.falsifies(&compiled, &choice, &mut scratch) {
            return Ok(OracleVerdict::Refuted { witness: grid.witness(&bases, &choice, keys) });
        }
    }
    Ok(OracleVerdict::NoCounterexample { tried: samples })
}

/// `a^m b^n` in the free commutative monoid on `a, b`, with the involution
/// swapping `a` and `b`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct CommPair {
    pub m: u64,
    pub n: u64,
}

impl CommPair {
    pub fn new(m: u64, n: u64) -> CommPair {
        CommPair { m, n }
    }

    pub fn star(self) -> CommPair {
        CommPair { m: self.n, n: self.m }
    }
}

impl std::ops::Mul for CommPair {
    type Output = CommPair;

    fn mul(self, other: CommPair) -> CommPair {
        CommPair { m: self.m + other.m, n: self.n + other.n }
    }
}

fn comm_eval(u: &IWord, slots: &HashMap<BaseVar, usize>, values: &[CommPair]) -> CommPair {
    u.letters().iter().fold(CommPair::default(), |acc, v| {
        let x = values[slots[&v.base]];
        acc * if v.starred { x.star() } else { x }
    })
}

/// Bases up to which [`comm_check`] walks the full grid.
const COMM_GRID_BASES: usize = 4;

/// Whether `id` holds under every assignment with coordinates at most 2.
/// Beyond four bases only assignments supported on a single base are tried;
/// the images are additive in the assignment, so those already decide.
pub fn comm_check(id: &Identity) -> bool {
    let bases = id.bases();
    let slots: HashMap<BaseVar, usize> = bases.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let coords: Vec<CommPair> = (0..=2).flat_map(|m| (0..=2).map(move |n| CommPair::new(m, n))).collect();
    let agrees = |values: &[CommPair]| comm_eval(&id.lhs, &slots, values) == comm_eval(&id.rhs, &slots, values);
    if bases.len() <= COMM_GRID_BASES {
        let total = coords.len().pow(bases.len() as u32) as u64;
        (0..total).all(|index| {
            let values: Vec<CommPair> =
                digits(index, coords.len(), bases.len()).into_iter().map(|d| coords[d]).collect();
            agrees(&values)
        })
    } else {
        (0..bases.len()).all(|i| {
            coords.iter().all(|&c| {
                let mut values = vec![CommPair::default(); bases.len()];
                values[i] = c;
                agrees(&values)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> Identity {
        Identity::parse(s).unwrap()
    }

    fn w(s: &str, n: u8) -> AWord {
        AWord::parse(s, n).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let sub = Substitution::new(2).with("x", w("1", 2)).unwrap().with("y", w("2", 2)).unwrap();
        assert!(!eval_substitution(&id("x y ~= y x"), &sub).unwrap());
        let sub = Substitution::new(2).with("x", w("", 2)).unwrap().with("y", w("2", 2)).unwrap();
        assert!(eval_substitution(&id("x y ~= y x"), &sub).unwrap());
        let sub = Substitution::new(2).with("x", w("1", 2)).unwrap();
        assert_eq!(sub.evaluate(&IWord::parse("x x*").unwrap()).unwrap().representative(), &w("12", 2));
        assert!(!eval_substitution(&id("x x* ~= x* x"), &sub).unwrap());
        assert!(matches!(eval_substitution(&id("x y ~= y x"), &sub), Err(Error::Unassigned(_))));
    }

    #[test]
    fn brute_force_examples() {
        let v = brute_force_check(&id("x y ~= y x"), 2, 1, DEFAULT_BUDGET).unwrap();
        let wit = v.witness().unwrap();
        assert_eq!(wit.assignment["x"], "1");
        assert_eq!(wit.assignment["y"], "2");
        let v = brute_force_check(&id("x h y k x y s x t y ~= x h y k y x s x t y"), 4, 1, DEFAULT_BUDGET).unwrap();
        assert!(!v.is_refuted());
        let v = brute_force_check(&id("x y* x ~= x y* x"), 3, 3, DEFAULT_BUDGET).unwrap();
        assert!(!v.is_refuted());
    }

    #[test]
    fn profiles_decide_classes() {
        let words = AWord::enumerate(3, 5);
        let (mut p, mut q) = (Profile::default(), Profile::default());
        for u in words.iter().step_by(7) {
            for v in words.iter().filter(|v| v.len() == u.len()) {
                p.fill(u.letters(), 3);
                q.fill(v.letters(), 3);
                let same = p.ev == q.ev && p.left == q.left && p.right == q.right;
                assert_eq!(same, crate::baxter::canonical(u) == crate::baxter::canonical(v), "{u} {v}");
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let r = brute_force_check(&id("a b c d e f ~= f e d c b a"), 3, 3, 1000);
        assert!(matches!(r, Err(Error::BudgetExceeded { budget: 1000, .. })));
    }

    #[test]
    fn witness_is_first_in_order() {
        let a = brute_force_check(&id("x y x ~= y x x"), 3, 2, DEFAULT_BUDGET).unwrap();
        let b = brute_force_check(&id("x y x ~= y x x"), 3, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sampled_is_reproducible() {
        let a = sampled_check(&id("x y ~= y x"), 3, 2, 50, 7).unwrap();
        let b = sampled_check(&id("x y ~= y x"), 3, 2, 50, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.is_refuted());
    }

    #[test]
    fn commutative_examples() {
        assert!(comm_check(&id("x x* ~= x* x")));
        assert!(!comm_check(&id("x ~= x x")));
        assert!(!comm_check(&id("x ~= x*")));
        assert!(comm_check(&id("a b c d e f ~= f e d c b a")));
        assert!(!comm_check(&id("a b c d e f ~= f e d c b a*")));
    }
}
