//! Seeded corpus of random valid Seifert matrices shared by the suites.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use splitknot::knot::SeifertMatrix;
use splitknot::linalg::IntMatrix;

#[allow(dead_code)]
pub const DEGREES: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

/// V = N + X with N = [[0, I], [0, 0]] and X symmetric, so V - V^T = N - N^T
/// is unimodular; then a random unimodular congruence P V P^T.
pub fn random_seifert(rng: &mut impl Rng, genus: usize, spread: i64) -> SeifertMatrix {
    let n = 2 * genus;
    let mut v = IntMatrix::zeros(n, n);
    for i in 0..genus {
        v[(i, genus + i)] = BigInt::from(1);
    }
    for i in 0..n {
        for j in i..n {
            let x = BigInt::from(rng.gen_range(-spread..=spread));
            v[(i, j)] += &x;
            if i != j {
                v[(j, i)] += &x;
            }
        }
    }
    let p = random_unimodular(rng, n);
    SeifertMatrix::new(&(&p * &v) * &p.transpose()).expect("congruent to a valid Seifert matrix")
}

fn random_unimodular(rng: &mut impl Rng, n: usize) -> IntMatrix {
    let mut p = IntMatrix::identity(n);
    for _ in 0..2 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let c = BigInt::from(rng.gen_range(-1..=1));
        let mut e = IntMatrix::identity(n);
        e[(i, j)] = c;
        p = &e * &p;
    }
    p
}

/// At least 50 matrices of sizes 2, 4 and 6 from a fixed seed.
pub fn corpus() -> Vec<SeifertMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    let mut out = Vec::new();
    for k in 0..54 {
        let genus = 1 + k % 3;
        let spread = if genus == 3 { 1 } else { 2 };
        out.push(random_seifert(&mut rng, genus, spread));
    }
    out
}
