//! Seeded generators for random corpora.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::engine::{extensions, AlgebraTable, CentralizerSeq};
use crate::field::{BasisChange, Prime, ProjPoint};

/// A valid prefix `C_2 … C_last` drawn by a random walk that picks uniformly
/// among the valid next centralizers, restarting on dead ends.
pub fn random_valid_prefix<R: Rng>(p: Prime, last_weight: u32, rng: &mut R) -> CentralizerSeq {
    'walk: loop {
        let mut t = AlgebraTable::empty(p);
        while t.max_weight() <= last_weight {
            let ext = extensions(&mut t);
            let Some(&c) = ext.choose(rng) else { continue 'walk };
            t.push(c);
        }
        return CentralizerSeq { p, alphas: t.alphas().to_vec() };
    }
}

/// A tower of between 0 and `max_len` uniformly chosen points.
pub fn random_tower<R: Rng>(p: Prime, max_len: usize, rng: &mut R) -> Vec<ProjPoint> {
    let points: Vec<ProjPoint> = ProjPoint::all(p).collect();
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| *points.choose(rng).expect("nonempty")).collect()
}

/// A uniformly chosen invertible matrix.
pub fn random_basis_change<R: Rng>(p: Prime, rng: &mut R) -> BasisChange {
    let q = p.get() as i64;
    loop {
        let m = [
            [rng.gen_range(0..q), rng.gen_range(0..q)],
            [rng.gen_range(0..q), rng.gen_range(0..q)],
        ];
        if let Ok(g) = BasisChange::new(m, p) {
            return g;
        }
    }
}
