use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::assignment::CommunityAssignment;

/// Balanced `k`-block model: dyadic edges appear with probability `a_e/n`
/// inside a block and `b_e/n` across blocks; hyperedges with probability
/// `a_t/n` when all three vertices share a block and `b_t/n` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockParams {
    pub n: usize,
    pub k: usize,
    pub a_e: f64,
    pub b_e: f64,
    pub a_t: f64,
    pub b_t: f64,
}

impl BlockParams {
    pub fn new(n: usize, k: usize, a_e: f64, b_e: f64, a_t: f64, b_t: f64) -> Result<Self> {
        let p = Self {
            n,
            k,
            a_e,
            b_e,
            a_t,
            b_t,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.n == 0 || !self.n.is_multiple_of(self.k) {
            return Err(Error::InvalidParams(format!(
                "n={} is not divisible into k={} equal blocks",
                self.n, self.k
            )));
        }
        let n = self.n as f64;
        let check = |name: &str, a: f64, b: f64| -> Result<()> {
            let ok = a.is_finite() && b.is_finite() && 0.0 <= b && b <= a && a <= n;
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!(
                    "{name} intensities must satisfy 0 <= b <= a <= n (a={a}, b={b}, n={n})"
                )))
            }
        };
        check("dyadic", self.a_e, self.b_e)?;
        check("triadic", self.a_t, self.b_t)
    }

    /// Checks that `c` is a balanced assignment matching `n` and `k`.
    pub fn check_assignment(&self, c: &CommunityAssignment) -> Result<()> {
        if c.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: c.n(),
            });
        }
        if c.k() != self.k || !c.is_balanced() {
            return Err(Error::InvalidParams(format!(
                "assignment must be balanced over k={} communities",
                self.k
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn block_size(&self) -> usize {
        self.n / self.k
    }

    pub fn p_in_edge(&self) -> f64 {
        self.a_e / self.n as f64
    }

    pub fn p_out_edge(&self) -> f64 {
        self.b_e / self.n as f64
    }

    pub fn p_in_triangle(&self) -> f64 {
        self.a_t / self.n as f64
    }

    pub fn p_out_triangle(&self) -> f64 {
        self.b_t / self.n as f64
    }

    /// Largest dyadic edge probability, `p^e_max`.
    pub fn p_e_max(&self) -> f64 {
        self.a_e.max(self.b_e) / self.n as f64
    }

    /// Largest hyperedge probability, `p^t_max`.
    pub fn p_t_max(&self) -> f64 {
        self.a_t.max(self.b_t) / self.n as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(BlockParams::new(10, 2, 3.0, 1.0, 2.0, 1.0).is_ok());
        assert!(BlockParams::new(9, 2, 3.0, 1.0, 2.0, 1.0).is_err());
        assert!(BlockParams::new(10, 2, 1.0, 3.0, 2.0, 1.0).is_err());
        assert!(BlockParams::new(10, 2, 11.0, 1.0, 2.0, 1.0).is_err());
        assert!(BlockParams::new(10, 2, 3.0, -1.0, 2.0, 1.0).is_err());
        assert!(BlockParams::new(10, 2, 3.0, 1.0, f64::NAN, 1.0).is_err());
        assert!(BlockParams::new(10, 0, 3.0, 1.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn assignment_check() {
        let p = BlockParams::new(4, 2, 1.0, 0.0, 1.0, 0.0).unwrap();
        assert!(p.check_assignment(&CommunityAssignment::balanced(4, 2).unwrap()).is_ok());
        let skewed = CommunityAssignment::new(vec![0, 0, 0, 1], 2).unwrap();
        assert!(p.check_assignment(&skewed).is_err());
    }
}
