//! Seeded input generators shared by the benchmarks.

use baxter_core::{AWord, IVar, IWord, Identity};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform word of length `len` over A_rank.
pub fn random_word(rng: &mut impl Rng, rank: u8, len: usize) -> AWord {
    let letters = (0..len).map(|_| rng.gen_range(1..=rank)).collect();
    AWord::new(rank, letters).expect("letters are in range")
}

/// A random identity `u ~= v` where v shuffles u, so both sides always have
/// the same content and the checker has to reach the precedence conditions.
pub fn random_identity(rng: &mut impl Rng, bases: usize, len: usize) -> Identity {
    let names: Vec<String> = (0..bases).map(|i| format!("x{i}")).collect();
    let u: Vec<IVar> = (0..len)
        .map(|_| {
            let name = &names[rng.gen_range(0..bases)];
            if rng.gen() {
                IVar::starred(name)
            } else {
                IVar::plain(name)
            }
        })
        .collect();
    let mut v = u.clone();
    v.shuffle(rng);
    Identity::new(IWord(u), IWord(v))
}
