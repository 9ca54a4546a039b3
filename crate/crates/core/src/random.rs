//! Seeded random gentle bound quivers for property tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quiver::{is_gentle, is_one_gorenstein, BoundQuiver};

const MAX_ATTEMPTS: usize = 100_000;

fn connected(q: &BoundQuiver) -> bool {
    let n = q.vertex_count();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for a in q.arrows() {
            for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|x| x)
}

/// One attempt: arrows within the degree bounds, then at every vertex a
/// pairing of incoming with outgoing arrows chosen as relations so that the
/// gentle continuation conditions hold. Loops are allowed.
fn attempt(rng: &mut ChaCha8Rng, name: &str, max_vertices: usize) -> Option<BoundQuiver> {
    let n = rng.gen_range(2..=max_vertices.max(2));
    let mut q = BoundQuiver::new(Some(name));
    for v in 0..n {
        q.add_vertex(&(v + 1).to_string()).ok()?;
    }
    let (mut outd, mut ind) = (vec![0usize; n], vec![0usize; n]);
    let target_arrows = rng.gen_range(n - 1..=(2 * n).min(n + 3));
    let mut tries = 0;
    while q.arrow_count() < target_arrows && tries < 50 {
        tries += 1;
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if s == t && rng.gen_bool(0.7) {
            continue;
        }
        if outd[s] < 2 && ind[t] < 2 {
            outd[s] += 1;
            ind[t] += 1;
            let k = q.arrow_count();
            q.add_arrow(&format!("a{}", k + 1), s, t).ok()?;
        }
    }
    for v in 0..n {
        let inn = q.in_arrows(v);
        let mut out = q.out_arrows(v);
        if inn.is_empty() || out.is_empty() {
            continue;
        }
        out.shuffle(rng);
        match (inn.len(), out.len()) {
            (2, 2) => {
                q.add_relation(&[inn[0], out[0]]).ok()?;
                q.add_relation(&[inn[1], out[1]]).ok()?;
            }
            (2, 1) => {
                let i = rng.gen_range(0..2);
                q.add_relation(&[inn[i], out[0]]).ok()?;
            }
            (1, 2) => q.add_relation(&[inn[0], out[0]]).ok()?,
            _ => {
                if rng.gen_bool(0.5) {
                    q.add_relation(&[inn[0], out[0]]).ok()?;
                }
            }
        }
    }
    (connected(&q) && q.infinite_path_witness().is_none() && is_gentle(&q).ok).then_some(q)
}

/// A connected gentle bound quiver with at most `max_vertices` vertices,
/// determined by `seed`; `one_gorenstein` restricts to 1-Gorenstein ones.
pub fn random_gentle_quiver(seed: u64, max_vertices: usize, one_gorenstein: bool) -> BoundQuiver {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let name = format!("R{seed}");
    for _ in 0..MAX_ATTEMPTS {
        if let Some(q) = attempt(&mut rng, &name, max_vertices) {
            if !one_gorenstein || is_one_gorenstein(&q).is_ok_and(|g| g.one_gorenstein) {
                return q;
            }
        }
    }
    panic!("no gentle quiver found for seed {seed}");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_quiver;

    #[test]
    fn deterministic_and_gentle() {
        for seed in 0..30 {
            let q = random_gentle_quiver(seed, 6, false);
            assert!(is_gentle(&q).ok);
            assert!(q.vertex_count() <= 6);
            assert_eq!(q, random_gentle_quiver(seed, 6, false));
            assert_eq!(parse_quiver(&q.to_text()).unwrap(), q);
        }
    }

    #[test]
    fn one_gorenstein_variant() {
        let mut cyclic = 0;
        for seed in 0..10 {
            let q = random_gentle_quiver(seed, 6, true);
            assert!(is_one_gorenstein(&q).unwrap().one_gorenstein);
            if !crate::quiver::cycles(&q).unwrap().classes.is_empty() {
                cyclic += 1;
            }
        }
        assert!(cyclic > 0);
    }
}
