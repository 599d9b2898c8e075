//! Faithful tropical representations of `baxt_1`, `baxt_2`, `baxt_3`, the
//! pair maps `A_n → baxt_3 × baxt_3` for `n ≥ 4`, and the block-diagonal
//! materialization of their product.

use serde::Serialize;

use crate::baxter::{canonical, sharp_word, BaxtElement};
use crate::error::{Error, Result};
use crate::semiring::{gen_j, gen_k, gen_p, gen_q, Semiring, UTMatrix};
use crate::words::{AWord, Letter};

fn scalar_pow<S: Semiring>(k: usize) -> Result<UTMatrix<S>> {
    UTMatrix::scalar(S::s()).pow(k as u64)
}

fn one<S: Semiring>() -> UTMatrix<S> {
    UTMatrix::scalar(S::one())
}

fn e2<S: Semiring>() -> UTMatrix<S> {
    UTMatrix::identity(2)
}

fn check_rank(w: &AWord, rank: u8) -> Result<()> {
    if w.rank() != rank {
        return Err(Error::RankMismatch(w.rank(), rank));
    }
    Ok(())
}

/// Image of one letter under `φ_1`, `φ_2` or `φ_3`.
pub fn generator_image<S: Semiring>(rank: u8, a: Letter) -> UTMatrix<S> {
    let (s, o, p, q, j, k, e) =
        (UTMatrix::scalar(S::s()), one::<S>(), gen_p::<S>(), gen_q::<S>(), gen_j::<S>(), gen_k::<S>(), e2::<S>());
    match (rank, a) {
        (1, 1) => p.mul(&q).expect("2x2 generators"),
        (2, 1) => UTMatrix::block_diag(&[s, p, j, o]),
        (2, 2) => UTMatrix::block_diag(&[o, k, q, s]),
        (3, 1) => UTMatrix::block_diag(&[s, p.clone(), p, e.clone(), o.clone(), j.clone(), e.clone(), j, o]),
        (3, 2) => UTMatrix::block_diag(&[o.clone(), k.clone(), k, p, s, q, j.clone(), j, o]),
        (3, 3) => UTMatrix::block_diag(&[o.clone(), k.clone(), e.clone(), k, o, e, q.clone(), q, s]),
        _ => panic!("no generator for letter {a} at rank {rank}"),
    }
}

/// Dimension of the representation of `baxt_rank`, `rank ≤ 3`.
pub fn small_dim(rank: u8) -> usize {
    match rank {
        1 => 2,
        2 => 6,
        3 => 15,
        _ => panic!("rank {rank} has no small representation"),
    }
}

fn product<S: Semiring>(w: &AWord) -> Result<UTMatrix<S>> {
    let mut m = UTMatrix::identity(small_dim(w.rank()));
    for &a in w.letters() {
        m = m.mul(&generator_image(w.rank(), a))?;
    }
    Ok(m)
}

pub fn phi1<S: Semiring>(w: &AWord) -> Result<UTMatrix<S>> {
    check_rank(w, 1)?;
    product(w)
}

pub fn phi2<S: Semiring>(w: &AWord) -> Result<UTMatrix<S>> {
    check_rank(w, 2)?;
    product(w)
}

pub fn phi3<S: Semiring>(w: &AWord) -> Result<UTMatrix<S>> {
    check_rank(w, 3)?;
    product(w)
}

/// `φ_1`, `φ_2` or `φ_3` according to the rank of `w`.
pub fn phi_small<S: Semiring>(w: &AWord) -> Result<UTMatrix<S>> {
    match w.rank() {
        1..=3 => product(w),
        r => Err(Error::BadRank { rank: r as usize, min: 1 }),
    }
}

/// Block-by-block evaluation of `φ_2` from the invariant triple, without
/// multiplying generators.
pub fn phi2_closed_form<S: Semiring>(w: &AWord) -> Result<UTMatrix<S>> {
    check_rank(w, 2)?;
    let e = canonical(w);
    let inv = Invariants::of(&e);
    let (p, q, j, k) = (gen_p::<S>(), gen_q::<S>(), gen_j::<S>(), gen_k::<S>());
    let l2 = if inv.supp_is(&[]) {
        e2()
    } else if inv.supp_is(&[1]) {
        p.pow(inv.count(1))?
    } else if let Some(l) = inv.left(1, 2) {
        p.pow(l)?.mul(&k)?
    } else {
        k
    };
    let l3 = if inv.supp_is(&[]) {
        e2()
    } else if inv.supp_is(&[2]) {
        q.pow(inv.count(2))?
    } else if let Some(r) = inv.right(2, 1) {
        j.mul(&q.pow(r)?)?
    } else {
        j
    };
    Ok(UTMatrix::block_diag(&[scalar_pow(e.ev()[0])?, l2, l3, scalar_pow(e.ev()[1])?]))
}

/// Block-by-block evaluation of `φ_3` from the invariant triple.
pub fn phi3_closed_form<S: Semiring>(w: &AWord) -> Result<UTMatrix<S>> {
    check_rank(w, 3)?;
    let e = canonical(w);
    let inv = Invariants::of(&e);
    let (p, q, j, k) = (gen_p::<S>(), gen_q::<S>(), gen_j::<S>(), gen_k::<S>());
    let has = |a: Letter| inv.count(a) > 0;
    let pk = |l: u64| -> Result<UTMatrix<S>> { p.pow(l)?.mul(&k) };
    let jq = |r: u64| -> Result<UTMatrix<S>> { j.mul(&q.pow(r)?) };
    let empty = inv.supp_is(&[]);

    let l2 = if empty {
        e2()
    } else if inv.supp_is(&[1]) {
        p.pow(inv.count(1))?
    } else if let (true, Some(l1)) = (inv.supp_is(&[1, 2]), inv.left(1, 2)) {
        pk(l1)?
    } else if let (true, Some(l2)) = (has(1) && has(3), inv.left(1, 3)) {
        pk(l2)?
    } else if let (true, Some(l1), Some(_)) = (inv.supp_is(&[1, 2, 3]), inv.left(1, 2), inv.left(2, 3)) {
        pk(l1)?
    } else {
        k.clone()
    };
    let l3 = if empty {
        e2()
    } else if inv.supp_is(&[1]) || inv.supp_is(&[1, 3]) {
        p.pow(inv.count(1))?
    } else if inv.supp_is(&[3]) {
        e2()
    } else if let (true, Some(l1)) = (has(1) && has(2), inv.left(1, 2)) {
        pk(l1)?
    } else {
        k.clone()
    };
    let l4 = if empty || inv.supp_is(&[1]) {
        e2()
    } else if inv.supp_is(&[2]) || inv.supp_is(&[1, 2]) {
        p.pow(inv.count(2))?
    } else if let (true, Some(l3)) = (has(2) && has(3), inv.left(2, 3)) {
        pk(l3)?
    } else {
        k.clone()
    };
    let l6 = if empty {
        e2()
    } else if inv.supp_is(&[2]) || inv.supp_is(&[2, 3]) {
        q.pow(inv.count(2))?
    } else if inv.supp_is(&[3]) {
        e2()
    } else if let (true, Some(r1)) = (has(1) && has(2), inv.right(2, 1)) {
        jq(r1)?
    } else {
        j.clone()
    };
    let l7 = if empty || inv.supp_is(&[1]) {
        e2()
    } else if inv.supp_is(&[3]) || inv.supp_is(&[1, 3]) {
        q.pow(inv.count(3))?
    } else if let (true, Some(r3)) = (has(2) && has(3), inv.right(3, 2)) {
        jq(r3)?
    } else {
        j.clone()
    };
    let l8 = if empty {
        e2()
    } else if inv.supp_is(&[3]) {
        q.pow(inv.count(3))?
    } else if let (true, Some(r2)) = (has(1) && has(3), inv.right(3, 1)) {
        jq(r2)?
    } else if let (true, Some(r3)) = (inv.supp_is(&[2, 3]), inv.right(3, 2)) {
        jq(r3)?
    } else if let (true, Some(_), Some(r3)) = (inv.supp_is(&[1, 2, 3]), inv.right(2, 1), inv.right(3, 2)) {
        jq(r3)?
    } else {
        j.clone()
    };
    Ok(UTMatrix::block_diag(&[
        scalar_pow(e.ev()[0])?,
        l2,
        l3,
        l4,
        scalar_pow(e.ev()[1])?,
        l6,
        l7,
        l8,
        scalar_pow(e.ev()[2])?,
    ]))
}

struct Invariants<'a> {
    e: &'a BaxtElement,
}

impl<'a> Invariants<'a> {
    fn of(e: &'a BaxtElement) -> Self {
        Invariants { e }
    }

    fn count(&self, a: Letter) -> u64 {
        self.e.ev()[a as usize - 1] as u64
    }

    fn supp_is(&self, letters: &[Letter]) -> bool {
        self.e.support() == letters
    }

    /// `ℓ` with `(a-b, ℓ) ∈ lpi`.
    fn left(&self, a: Letter, b: Letter) -> Option<u64> {
        self.e.lpi().iter().find(|t| t.0 == a && t.1 == b).map(|t| t.2 as u64)
    }

    /// `r` with `(b-a, r) ∈ rpi`.
    fn right(&self, b: Letter, a: Letter) -> Option<u64> {
        self.e.rpi().iter().find(|t| t.0 == b && t.1 == a).map(|t| t.2 as u64)
    }
}

/// An element of `baxt_3 × baxt_3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PairElement {
    pub first: BaxtElement,
    pub second: BaxtElement,
}

impl PairElement {
    pub fn identity() -> Self {
        PairElement { first: BaxtElement::identity(3), second: BaxtElement::identity(3) }
    }

    /// `(a, b)# = (b#, a#)`.
    pub fn sharp(&self) -> Self {
        PairElement { first: self.second.sharp(), second: self.first.sharp() }
    }
}

/// Which of the four families of pair maps applies to `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairCase {
    /// `i# = j`.
    Lambda,
    /// One of `i, j` is a fixed point of `#`.
    Theta,
    /// `i, j` lie on the same side of the middle.
    Eta,
    /// `i, j` lie on opposite sides, interleaved with their images.
    Kappa,
}

/// A letter map `A_n → A_3^*`: `lo ↦ lo_img`, `lo < k < hi ↦ mid_img`,
/// `hi ↦ hi_img`, anything else to the empty word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Component {
    lo: Letter,
    hi: Letter,
    lo_img: &'static [Letter],
    mid_img: &'static [Letter],
    hi_img: &'static [Letter],
}

impl Component {
    fn image(&self, k: Letter) -> &'static [Letter] {
        if k == self.lo {
            self.lo_img
        } else if k == self.hi {
            self.hi_img
        } else if self.lo < k && k < self.hi {
            self.mid_img
        } else {
            &[]
        }
    }
}

fn lower(lo: Letter, hi: Letter) -> Component {
    Component { lo, hi, lo_img: &[1], mid_img: &[2, 1], hi_img: &[2] }
}

fn upper(lo: Letter, hi: Letter) -> Component {
    Component { lo, hi, lo_img: &[2], mid_img: &[3, 2], hi_img: &[3] }
}

/// The letter-level pair map `φ_ij`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairMap {
    pub case: PairCase,
    first: Component,
    second: Component,
}

impl PairMap {
    pub fn new(n: u8, i: u8, j: u8) -> Result<PairMap> {
        if n < 4 {
            return Err(Error::BadRank { rank: n as usize, min: 4 });
        }
        if !(1 <= i && i < j && j <= n) {
            return Err(Error::IndexPair { i, j, n });
        }
        let (is, js) = (n + 1 - i, n + 1 - j);
        let cases = [
            is == j,
            i < j && j == js && js < is,
            js < i && i == is && is < j,
            i < j && j < js && js < is,
            js < is && is < i && i < j,
            i < js && js < j && j < is,
            js < i && i < is && is < j,
        ];
        assert_eq!(cases.iter().filter(|&&c| c).count(), 1, "order cases must partition ({i}, {j}) at n = {n}");
        let lambda = Component { lo: i, hi: j, lo_img: &[1], mid_img: &[3, 1], hi_img: &[3] };
        let (case, first, second) = match cases.iter().position(|&c| c).unwrap() {
            0 => (PairCase::Lambda, lambda, lambda),
            1 => (PairCase::Theta, lower(i, j), upper(j, is)),
            2 => (PairCase::Theta, lower(js, i), upper(i, j)),
            3 => (PairCase::Eta, lower(i, j), upper(js, is)),
            4 => (PairCase::Eta, lower(js, is), upper(i, j)),
            5 => (PairCase::Kappa, lower(i, j), upper(js, is)),
            _ => (PairCase::Kappa, lower(js, is), upper(i, j)),
        };
        Ok(PairMap { case, first, second })
    }

    /// Images of a single letter as words over `A_3`.
    pub fn letter_image(&self, k: Letter) -> (&'static [Letter], &'static [Letter]) {
        (self.first.image(k), self.second.image(k))
    }

    pub fn apply(&self, w: &AWord) -> PairElement {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for &k in w.letters() {
            let (x, y) = self.letter_image(k);
            a.extend_from_slice(x);
            b.extend_from_slice(y);
        }
        PairElement {
            first: BaxtElement::new(AWord::new(3, a).expect("images lie in A_3")),
            second: BaxtElement::new(AWord::new(3, b).expect("images lie in A_3")),
        }
    }
}

pub fn phi_ij(w: &AWord, i: u8, j: u8) -> Result<PairElement> {
    Ok(PairMap::new(w.rank(), i, j)?.apply(w))
}

/// Index pairs `(i, j)`, `1 ≤ i < j ≤ n`, in lexicographic order.
pub fn index_pairs(n: u8) -> Vec<(u8, u8)> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

/// Element of the product of `baxt_3 × baxt_3` over all index pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TupleElement {
    pub rank: u8,
    /// One coordinate per index pair, in lexicographic order.
    pub coords: Vec<PairElement>,
}

impl TupleElement {
    /// Coordinatewise involution.
    pub fn sharp(&self) -> Self {
        TupleElement { rank: self.rank, coords: self.coords.iter().map(PairElement::sharp).collect() }
    }
}

impl Serialize for TupleElement {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        #[derive(Serialize)]
        struct Coord<'a> {
            i: u8,
            j: u8,
            first: &'a BaxtElement,
            second: &'a BaxtElement,
        }
        #[derive(Serialize)]
        struct Tuple<'a> {
            n: u8,
            coords: Vec<Coord<'a>>,
        }
        let coords = index_pairs(self.rank)
            .into_iter()
            .zip(&self.coords)
            .map(|((i, j), c)| Coord { i, j, first: &c.first, second: &c.second })
            .collect();
        Tuple { n: self.rank, coords }.serialize(s)
    }
}

pub fn phi_n(w: &AWord) -> Result<TupleElement> {
    let n = w.rank();
    if n < 4 {
        return Err(Error::BadRank { rank: n as usize, min: 4 });
    }
    let coords = index_pairs(n).into_iter().map(|(i, j)| phi_ij(w, i, j)).collect::<Result<_>>()?;
    Ok(TupleElement { rank: n, coords })
}

/// Block-diagonal matrix of dimension `30 · |I_n|`: first components in
/// lexicographic index order, then second components in reverse order, each
/// through `φ_3`.
pub fn materialize<S: Semiring>(t: &TupleElement) -> Result<UTMatrix<S>> {
    let mut blocks = Vec::with_capacity(2 * t.coords.len());
    for c in &t.coords {
        blocks.push(phi3(c.first.representative())?);
    }
    for c in t.coords.iter().rev() {
        blocks.push(phi3(c.second.representative())?);
    }
    Ok(UTMatrix::block_diag(&blocks))
}

/// `φ` for any rank: the small representations for `n ≤ 3`, the
/// materialized tuple for `n ≥ 4`.
pub fn represent<S: Semiring>(w: &AWord) -> Result<UTMatrix<S>> {
    if w.rank() <= 3 {
        phi_small(w)
    } else {
        materialize(&phi_n(w)?)
    }
}

/// Checks `φ(w#) = φ(w)^D` for one word.
pub fn respects_involution<S: Semiring>(w: &AWord) -> Result<bool> {
    Ok(represent::<S>(&sharp_word(w))? == represent::<S>(w)?.skew_transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Tropical;
    use proptest::prelude::*;

    type M = UTMatrix<Tropical>;

    fn aw(s: &str, n: u8) -> AWord {
        AWord::parse(s, n).unwrap()
    }

    fn cls(s: &str) -> BaxtElement {
        canonical(&aw(s, 3))
    }

    #[test]
    fn phi2_examples() {
        let s = M::scalar(Tropical::s());
        let o = M::scalar(Tropical::finite(0));
        assert_eq!(phi2::<Tropical>(&aw("1", 2)).unwrap(), M::block_diag(&[s, gen_p(), gen_j(), o]));
        assert_eq!(phi2::<Tropical>(&AWord::empty(2)).unwrap(), M::identity(6));
        assert_eq!(phi2::<Tropical>(&aw("2121", 2)).unwrap(), phi2::<Tropical>(&aw("2211", 2)).unwrap());
        assert!(phi2::<Tropical>(&aw("1", 3)).is_err());
        assert_eq!(phi1::<Tropical>(&aw("111", 1)).unwrap().get(0, 0), &Tropical::finite(3));
    }

    #[test]
    fn generators_respect_the_involution() {
        for n in 1..=3u8 {
            for a in 1..=n {
                let img: M = generator_image(n, a);
                assert_eq!(img.skew_transpose(), generator_image(n, n + 1 - a));
            }
        }
    }

    #[test]
    fn pair_map_examples() {
        let w = aw("1", 4);
        assert_eq!(PairMap::new(4, 1, 4).unwrap().case, PairCase::Lambda);
        assert_eq!(phi_ij(&w, 1, 4).unwrap(), PairElement { first: cls("1"), second: cls("1") });
        let m = PairMap::new(4, 1, 2).unwrap();
        assert_eq!(m.case, PairCase::Eta);
        assert_eq!(phi_ij(&aw("3", 4), 1, 2).unwrap(), PairElement { first: cls(""), second: cls("2") });
        assert_eq!(phi_ij(&AWord::empty(4), 2, 3).unwrap(), PairElement::identity());
        assert_eq!(PairMap::new(4, 1, 3).unwrap().case, PairCase::Kappa);
        assert_eq!(PairMap::new(5, 1, 3).unwrap().case, PairCase::Theta);
        assert_eq!(PairMap::new(5, 3, 4).unwrap().case, PairCase::Theta);
        assert!(matches!(PairMap::new(4, 3, 3), Err(Error::IndexPair { .. })));
        assert!(matches!(PairMap::new(3, 1, 2), Err(Error::BadRank { .. })));
    }

    #[test]
    fn every_index_pair_dispatches() {
        for n in 4..=12u8 {
            for (i, j) in index_pairs(n) {
                PairMap::new(n, i, j).unwrap();
            }
        }
    }

    #[test]
    fn materialized_dimension() {
        let t = phi_n(&AWord::empty(4)).unwrap();
        assert!(t.coords.iter().all(|c| *c == PairElement::identity()));
        let m: M = materialize(&t).unwrap();
        assert_eq!(m, M::identity(180));
    }

    #[test]
    fn tuple_json() {
        let v = serde_json::to_value(phi_n(&aw("14", 4)).unwrap()).unwrap();
        assert_eq!(v["n"], 4);
        assert_eq!(v["coords"].as_array().unwrap().len(), 6);
        assert_eq!(v["coords"][2]["i"], 1);
        assert_eq!(v["coords"][2]["j"], 4);
        assert_eq!(v["coords"][2]["first"]["representative"], serde_json::json!([1, 3]));
    }

    fn word(n: u8, max: usize) -> impl Strategy<Value = AWord> {
        proptest::collection::vec(1..=n, 0..max).prop_map(move |l| AWord::new(n, l).unwrap())
    }

    proptest! {
        #[test]
        fn small_representations_are_homomorphisms(n in 1u8..=3, seed in any::<u64>()) {
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
            let mut pick = || {
                let len = rand::Rng::gen_range(&mut rng, 0..8);
                AWord::new(n, (0..len).map(|_| rand::Rng::gen_range(&mut rng, 1..=n)).collect()).unwrap()
            };
            let (u, v) = (pick(), pick());
            let uv = u.concat(&v).unwrap();
            let lhs: M = phi_small(&uv).unwrap();
            prop_assert_eq!(lhs, phi_small::<Tropical>(&u).unwrap().mul(&phi_small(&v).unwrap()).unwrap());
            prop_assert!(respects_involution::<Tropical>(&u).unwrap());
        }

        #[test]
        fn pair_maps_commute_with_sharp(w in word(7, 10)) {
            let t = phi_n(&w).unwrap();
            prop_assert_eq!(phi_n(&sharp_word(&w)).unwrap(), t.sharp());
        }

        #[test]
        fn materialize_intertwines_the_involutions(w in word(4, 8)) {
            let t = phi_n(&w).unwrap();
            let m: M = materialize(&t).unwrap();
            prop_assert_eq!(materialize::<Tropical>(&t.sharp()).unwrap(), m.skew_transpose());
        }
    }
}
