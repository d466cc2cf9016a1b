use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sub-stream identifiers. The dyadic and triadic processes of a superimposed
/// draw use disjoint ChaCha streams under the same key, so each marginal is
/// exactly what the standalone generator produces for that seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Dyadic = 1,
    Triadic = 2,
    KMeans = 3,
    Solver = 4,
}

pub fn stream_rng(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes an ordered list of integers into one seed.
pub fn derive_seed(parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(0x6A09_E667_F3BC_C908u64, |acc, &p| splitmix64(acc ^ splitmix64(p)))
}

/// Stable 64-bit tag for a string (FNV-1a), used to key seeds by scenario name.
pub fn tag(name: &str) -> u64 {
    name.bytes().fold(0xCBF2_9CE4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01B3)
    })
}

/// Calls `f(idx)` for each success among `len` independent Bernoulli(`p`)
/// trials, jumping between successes with geometric gaps.
pub(crate) fn for_each_success<R: Rng>(len: usize, p: f64, rng: &mut R, mut f: impl FnMut(usize)) {
    if len == 0 || p <= 0.0 {
        return;
    }
    if p >= 1.0 {
        (0..len).for_each(f);
        return;
    }
    let log_q = (-p).ln_1p();
    let mut pos = 0usize;
    while pos < len {
        // u in (0, 1]; floor(ln u / ln q) is the number of failures before the next success.
        let u = 1.0 - rng.gen::<f64>();
        let gap = (u.ln() / log_q).floor();
        if gap >= (len - pos) as f64 {
            break;
        }
        pos += gap as usize;
        f(pos);
        pos += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(&[1, 2]), derive_seed(&[2, 1]));
        assert_ne!(derive_seed(&[0]), derive_seed(&[0, 0]));
        assert_eq!(derive_seed(&[7, 9]), derive_seed(&[7, 9]));
    }

    #[test]
    fn streams_are_independent_sequences() {
        let a: Vec<u64> = (0..4).map(|_| stream_rng(5, Stream::Dyadic).gen()).collect();
        let mut r = stream_rng(5, Stream::Triadic);
        let b: Vec<u64> = (0..4).map(|_| r.gen()).collect();
        assert_ne!(a[0], b[0]);
    }

    #[test]
    fn geometric_skipping_matches_success_rate() {
        let mut rng = stream_rng(11, Stream::Triadic);
        let (len, p) = (1000, 0.03);
        let reps = 2000;
        let mut total = 0usize;
        let mut per_position = vec![0usize; len];
        for _ in 0..reps {
            for_each_success(len, p, &mut rng, |i| {
                total += 1;
                per_position[i] += 1;
            });
        }
        let mean = total as f64 / reps as f64;
        let se = (len as f64 * p * (1.0 - p) / reps as f64).sqrt();
        assert!((mean - len as f64 * p).abs() < 4.0 * se, "mean {mean}");
        // first and last positions are hit at the same rate
        let head: usize = per_position[..100].iter().sum();
        let tail: usize = per_position[len - 100..].iter().sum();
        let expect = 100.0 * p * reps as f64;
        let sd = expect.sqrt();
        assert!((head as f64 - expect).abs() < 4.0 * sd);
        assert!((tail as f64 - expect).abs() < 4.0 * sd);
    }

    #[test]
    fn geometric_skipping_edge_probabilities() {
        let mut rng = stream_rng(1, Stream::Triadic);
        let mut hits = Vec::new();
        for_each_success(5, 1.0, &mut rng, |i| hits.push(i));
        assert_eq!(hits, vec![0, 1, 2, 3, 4]);
        hits.clear();
        for_each_success(5, 0.0, &mut rng, |i| hits.push(i));
        assert!(hits.is_empty());
    }
}
