//! Deterministic low-discrepancy sampling used by the diagnostics checks and
//! the feasibility sweep. Halton points with distinct prime bases per
//! dimension; the seed offsets the stream so runs are reproducible.

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Radical-inverse (van der Corput) value of `index` in `base`.
fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut scale = inv;
    let mut value = 0.0;
    while index > 0 {
        value += (index % base) as f64 * scale;
        index /= base;
        scale *= inv;
    }
    value
}

/// Point `index` of the Halton sequence in `DIM` dimensions, inside [0,1)^DIM.
pub(crate) fn halton_point<const DIM: usize>(index: u64) -> [f64; DIM] {
    debug_assert!(DIM <= PRIMES.len());
    let mut point = [0.0; DIM];
    for (dim, slot) in point.iter_mut().enumerate() {
        *slot = radical_inverse(index.wrapping_add(1), PRIMES[dim]);
    }
    point
}

pub(crate) fn lerp(lo: f64, hi: f64, t: f64) -> f64 {
    lo + (hi - lo) * t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radical_inverse_base2_prefix() {
        // 1, 2, 3, 4 -> 0.5, 0.25, 0.75, 0.125 in base 2
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(2, 2), 0.25);
        assert_eq!(radical_inverse(3, 2), 0.75);
        assert_eq!(radical_inverse(4, 2), 0.125);
    }

    #[test]
    fn halton_points_stay_in_unit_cube() {
        for k in 0..1000 {
            let p = halton_point::<6>(k);
            assert!(p.iter().all(|v| (0.0..1.0).contains(v)));
        }
    }
}
