//! Named identity families: the bases for `(baxt_2, #)` and `(baxt_n, #)`
//! with `n ≥ 4`, the `p_k ≈ q_k` family, and isoterm search.

use crate::checker::{check, Mode};
use crate::error::{Error, Result};
use crate::words::{IVar, IWord, Identity};

fn var(name: &str, starred: bool) -> IVar {
    if starred {
        IVar::starred(name)
    } else {
        IVar::plain(name)
    }
}

/// `p_k` with the middle block permuted by `pi` and `q_k` with it permuted
/// by `sigma`; both permutations are of `0..2k`.
pub fn pk_qk_permuted(k: usize, pi: &[usize], sigma: &[usize]) -> Result<Identity> {
    if k < 2 {
        return Err(Error::FamilyParameter(k));
    }
    let m = 2 * k;
    for p in [pi, sigma] {
        let mut sorted = p.to_vec();
        sorted.sort_unstable();
        if sorted != (0..m).collect::<Vec<_>>() {
            return Err(Error::Invalid(format!("{p:?} is not a permutation of 0..{m}")));
        }
    }
    let xi = |i: usize, starred: bool| var(&format!("x{}", i + 1), starred);
    let x = var("x", false);
    let xs = x.star();
    let head: Vec<IVar> = (0..m).map(|i| xi(i, true)).chain([x, xs]).collect();
    let tail: Vec<IVar> = [xs, x]
        .into_iter()
        .chain((0..m).step_by(2).map(|i| xi(i, true)))
        .chain((1..m).step_by(2).map(|i| xi(i, true)))
        .collect();
    let side = |open: IVar, perm: &[usize], close: IVar| {
        let mut w = head.clone();
        w.push(open);
        w.extend(perm.iter().map(|&i| xi(i, false)));
        w.push(close);
        w.extend_from_slice(&tail);
        IWord(w)
    };
    Ok(Identity::new(side(xs, pi, x), side(x, sigma, xs)))
}

/// `p_k ≈ q_k` for `k ≥ 2`.
pub fn pk_qk(k: usize) -> Result<Identity> {
    let id: Vec<usize> = (0..2 * k).collect();
    pk_qk_permuted(k, &id, &id)
}

const BASIS2: [&str; 22] = [
    "x* h x k x y s x* t x ~= x* h x k y x s x* t x",
    "x* h x k x y s x t x* ~= x* h x k y x s x t x*",
    "x h x* k x y s x* t x ~= x h x* k y x s x* t x",
    "x h x* k x y s x t x* ~= x h x* k y x s x t x*",
    "x* h x k x y s y* t y ~= x* h x k y x s y* t y",
    "x* h x k x y s y t y* ~= x* h x k y x s y t y*",
    "x h x* k x y s y* t y ~= x h x* k y x s y* t y",
    "x h x* k x y s y t y* ~= x h x* k y x s y t y*",
    "x h y k x y s x t y ~= x h y k y x s x t y",
    "x h y k x y s y t x ~= x h y k y x s y t x",
    "x h y k x y s x* t y* ~= x h y k y x s x* t y*",
    "x h y k x y s y* t x* ~= x h y k y x s y* t x*",
    "x* h y* k x y s x* t y* ~= x* h y* k y x s x* t y*",
    "x* h y* k x y s y* t x* ~= x* h y* k y x s y* t x*",
    "x* h x k x y s x t y ~= x* h x k y x s x t y",
    "x* h x k x y s y t x ~= x* h x k y x s y t x",
    "x h x* k x y s x t y ~= x h x* k y x s x t y",
    "x h x* k x y s y t x ~= x h x* k y x s y t x",
    "x* h x k x y s x* t y* ~= x* h x k y x s x* t y*",
    "x* h x k x y s y* t x* ~= x* h x k y x s y* t x*",
    "x h x* k x y s x* t y* ~= x h x* k y x s x* t y*",
    "x h x* k x y s y* t x* ~= x h x* k y x s y* t x*",
];

const BASIS4: [&str; 2] = ["x h y k x y s x t y ~= x h y k y x s x t y", "x h y k x y s y t x ~= x h y k y x s y t x"];

/// The 22 listed basis identities of `(baxt_2, #)` followed by their 22
/// reverses.
pub fn basis2() -> Vec<Identity> {
    let listed: Vec<Identity> = BASIS2.iter().map(|s| Identity::parse(s).expect("static identity")).collect();
    let reverses: Vec<Identity> = listed.iter().map(Identity::reversed).collect();
    listed.into_iter().chain(reverses).collect()
}

/// The two basis identities of `(baxt_n, #)`, `n ≥ 4`.
pub fn basis4() -> Vec<Identity> {
    BASIS4.iter().map(|s| Identity::parse(s).expect("static identity")).collect()
}

pub const ISOTERM_LIMIT: usize = 10;

/// Rearranges `w` into the next permutation in lexicographic order; false
/// once the last one has been passed.
fn next_permutation<T: Ord>(w: &mut [T]) -> bool {
    let Some(i) = w.windows(2).rposition(|p| p[0] < p[1]) else {
        w.reverse();
        return false;
    };
    let j = w.iter().rposition(|x| *x > w[i]).unwrap();
    w.swap(i, j);
    w[i + 1..].reverse();
    true
}

/// All rearrangements `v ≠ u` of the letters of `u` such that `u ≈ v` holds
/// in `(baxt_n, #)`. Unbalanced candidates never hold for `n ≥ 2`, so only
/// rearrangements are tried. An empty result means `u` is an isoterm.
pub fn isoterm_search(u: &IWord, rank: u8) -> Result<Vec<IWord>> {
    if u.len() > ISOTERM_LIMIT {
        return Err(Error::TooLong { len: u.len(), limit: ISOTERM_LIMIT });
    }
    let mut letters = u.0.clone();
    letters.sort();
    let mut out = Vec::new();
    loop {
        let v = IWord(letters.clone());
        if v != *u && check(&Identity::new(u.clone(), v.clone()), rank, Mode::Involution)?.verdict {
            out.push(v);
        }
        if !next_permutation(&mut letters) {
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::is_balanced;

    #[test]
    fn pk_qk_shape() {
        let id = pk_qk(2).unwrap();
        let p = IWord::parse("x1* x2* x3* x4* x x* x* x1 x2 x3 x4 x x* x x1* x3* x2* x4*").unwrap();
        let q = IWord::parse("x1* x2* x3* x4* x x* x x1 x2 x3 x4 x* x* x x1* x3* x2* x4*").unwrap();
        assert_eq!(id.lhs, p);
        assert_eq!(id.rhs, q);
        for k in 2..=5 {
            let id = pk_qk(k).unwrap();
            assert_eq!(id.lhs.len(), id.rhs.len());
            assert_eq!(id.lhs.len(), 6 * k + 6);
            assert!(is_balanced(&id));
        }
        assert!(matches!(pk_qk(1), Err(Error::FamilyParameter(1))));
        assert!(pk_qk_permuted(2, &[0, 1, 2, 2], &[0, 1, 2, 3]).is_err());
    }

    #[test]
    fn permuted_family() {
        let id = pk_qk_permuted(2, &[1, 0, 2, 3], &[3, 2, 1, 0]).unwrap();
        assert_eq!(id.lhs.0[7], IVar::plain("x2"));
        assert_eq!(id.rhs.0[7], IVar::plain("x4"));
        assert!(is_balanced(&id));
    }

    #[test]
    fn basis_lists() {
        let b2 = basis2();
        assert_eq!(b2.len(), 44);
        assert!(b2.contains(&Identity::parse("x* h x k x y s x* t x ~= x* h x k y x s x* t x").unwrap()));
        assert_eq!(b2[22], b2[0].reversed());
        assert_eq!(basis4().len(), 2);
        assert!(b2.iter().chain(&basis4()).all(is_balanced));
    }

    #[test]
    fn permutations_enumerate_multiset() {
        let mut w = vec![1, 1, 2, 3];
        let mut n = 1;
        while next_permutation(&mut w) {
            n += 1;
        }
        assert_eq!(n, 12);
        assert_eq!(w, vec![1, 1, 2, 3]);
    }

    #[test]
    fn isoterm_examples() {
        let u = IWord::parse("x x* y y*").unwrap();
        assert!(isoterm_search(&u, 2).unwrap().is_empty());
        let u = IWord::parse("x y y* x*").unwrap();
        assert!(isoterm_search(&u, 3).unwrap().is_empty());
        let u = IWord::parse("x y x y").unwrap();
        assert!(!isoterm_search(&u, 4).unwrap().contains(&IWord::parse("x x y y").unwrap()));
        assert!(matches!(isoterm_search(&IWord::parse("x x x x x x x x x x x").unwrap(), 2), Err(Error::TooLong { .. })));
    }
}
