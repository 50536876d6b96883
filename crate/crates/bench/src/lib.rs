//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use equicode::code::rs_degenerate_code;
use equicode::decode::make_rs_decoder_data;
use equicode::kgmat::{flatten, unflatten};
use equicode::{AbelianGroup, DecoderData, Field, GroupAlgebra, GroupAlgebraElement, ResidueVector};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `F_p[Z/o]`.
pub fn cyclic_algebra(p: u64, order: usize) -> Arc<GroupAlgebra> {
    GroupAlgebra::new(Field::prime(p).expect("prime"), AbelianGroup::cyclic(order).expect("order > 0"))
}

pub fn random_pair(alg: &Arc<GroupAlgebra>, seed: u64) -> (GroupAlgebraElement, GroupAlgebraElement) {
    let mut r = rng(seed);
    (alg.random(&mut r), alg.random(&mut r))
}

/// Decoder for the `[12, 6]` Reed–Solomon code over `F_13`.
pub fn rs_decoder() -> DecoderData {
    let code = rs_degenerate_code(13, 12, 5).expect("valid parameters");
    make_rs_decoder_data(&code, 3).expect("valid window")
}

/// A random codeword of the decoder's code with `t` corrupted points.
pub fn noisy_word(dd: &DecoderData, t: usize, seed: u64) -> ResidueVector {
    let mut r = rng(seed);
    let alg = dd.algebra();
    let code = dd.code();
    let m: Vec<_> = (0..code.k()).map(|_| alg.random(&mut r)).collect();
    let mut flat = flatten(&code.encode(&m).expect("message length"));
    let f = alg.field();
    for j in sample(&mut r, flat.len(), t) {
        flat[j] = f.add(flat[j], f.random_nonzero(&mut r));
    }
    unflatten(alg, &flat).expect("whole blocks")
}
