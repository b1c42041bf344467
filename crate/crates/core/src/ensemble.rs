//! Seeded random states for property sweeps.

use rand::seq::index::sample;
use rand::Rng;

use crate::crystal::{CrystalParams, Letter};
use crate::state::State;

/// A state with `width` cells of which at most `max_letters` are non-vacuum,
/// placed uniformly at random with uniformly random letters.
pub fn random_state<R: Rng + ?Sized>(
    rng: &mut R,
    params: CrystalParams,
    width: usize,
    max_letters: usize,
) -> State {
    let vacuum = params.vacuum();
    let mut cells = vec![vacuum; width];
    let k = rng.gen_range(0..=max_letters.min(width));
    for pos in sample(rng, width, k) {
        cells[pos] = rng.gen_range(1..vacuum);
    }
    State::from_raw(params, cells, 0)
}

/// Weakly decreasing soliton content over `{1, ..., n-1}`.
pub fn random_soliton<R: Rng + ?Sized>(
    rng: &mut R,
    params: CrystalParams,
    length: usize,
) -> Vec<Letter> {
    let mut letters: Vec<Letter> = (0..length)
        .map(|_| rng.gen_range(1..params.vacuum()))
        .collect();
    letters.sort_unstable_by(|a, b| b.cmp(a));
    letters
}

/// Solitons of the given lengths, left to right, separated by random gaps
/// in `min_gap..=max_gap`, with `min_gap` vacuum cells on either side.
pub fn random_soliton_state<R: Rng + ?Sized>(
    rng: &mut R,
    params: CrystalParams,
    lengths: &[usize],
    min_gap: usize,
    max_gap: usize,
) -> State {
    let vacuum = params.vacuum();
    let mut cells = vec![vacuum; min_gap];
    for (k, &l) in lengths.iter().enumerate() {
        if k > 0 {
            let gap = rng.gen_range(min_gap..=max_gap.max(min_gap));
            cells.extend(std::iter::repeat_n(vacuum, gap));
        }
        cells.extend(random_soliton(rng, params, l));
    }
    cells.extend(std::iter::repeat_n(vacuum, min_gap));
    State::from_raw(params, cells, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_states_respect_bounds() {
        let params = CrystalParams::new(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let s = random_state(&mut rng, params, 30, 10);
            assert_eq!(s.width(), 30);
            assert!(s.nonvacuum_count() <= 10);
            let lengths = [3, 1];
            let s = random_soliton_state(&mut rng, params, &lengths, 4, 8);
            assert_eq!(s.nonvacuum_count(), 4);
            let sol = crate::solitons::detect(&s, 0).unwrap();
            assert_eq!(sol.len(), 2);
            assert!(sol[0].content.windows(2).all(|w| w[0] >= w[1]));
        }
    }
}
