//! Hermite polynomials `H_n` by the three-term recurrence, with shared
//! power-of-two exponent renormalization so arbitrary orders stay finite.

use super::scaled::{ScaledComplex, ScaledReal};
use num_complex::Complex64;

// Renormalize whenever a running mantissa leaves [2^-512, 2^512]; the shift
// is an exact power of two applied to both ladder entries.
const BAND: f64 = 1.3407807929942597e154; // 2^512
const BAND_INV: f64 = 7.458340731200207e-155; // 2^-512
const SHIFT_DOWN: f64 = 7.458340731200207e-155;
const SHIFT_UP: f64 = 1.3407807929942597e154;

/// `H_n(z)` for complex `z` via `H_{k+1} = 2 z H_k - 2 k H_{k-1}`.
pub fn hermite_scaled(n: u32, z: Complex64) -> ScaledComplex {
    let mut ladder = HermiteLadderComplex::new(z);
    let mut last = ladder.next_value();
    for _ in 0..n {
        last = ladder.next_value();
    }
    last
}

/// All of `H_0(z) .. H_{n_max}(z)` in one pass.
pub fn hermite_ladder(n_max: u32, z: Complex64) -> Vec<ScaledComplex> {
    let mut ladder = HermiteLadderComplex::new(z);
    (0..=n_max).map(|_| ladder.next_value()).collect()
}

/// All of `H_0(x) .. H_{n_max}(x)` for real `x`.
pub fn hermite_ladder_real(n_max: u32, x: f64) -> Vec<ScaledReal> {
    let mut ladder = HermiteLadderReal::new(x);
    (0..=n_max).map(|_| ladder.next_value()).collect()
}

/// Incremental complex Hermite ladder; yields `H_0, H_1, ...` on demand.
pub struct HermiteLadderComplex {
    z2: Complex64,
    prev: Complex64, // H_{k-1} mantissa pair
    curr: Complex64, // H_k mantissa pair
    exponent: i64,
    k: u32,
    started: bool,
}

impl HermiteLadderComplex {
    pub fn new(z: Complex64) -> Self {
        assert!(z.re.is_finite() && z.im.is_finite());
        Self {
            z2: 2.0 * z,
            prev: Complex64::new(0.0, 0.0),
            curr: Complex64::new(1.0, 0.0),
            exponent: 0,
            k: 0,
            started: false,
        }
    }

    /// Returns the next ladder value, starting from `H_0 = 1`.
    pub fn next_value(&mut self) -> ScaledComplex {
        if !self.started {
            self.started = true;
            return ScaledComplex::new(self.curr.re, self.curr.im, self.exponent);
        }
        let next = self.z2 * self.curr - 2.0 * self.k as f64 * self.prev;
        self.prev = self.curr;
        self.curr = next;
        self.k += 1;
        self.renormalize();
        ScaledComplex::new(self.curr.re, self.curr.im, self.exponent)
    }

    fn renormalize(&mut self) {
        let mag = self.curr.re.abs().max(self.curr.im.abs());
        if mag > BAND {
            self.curr *= SHIFT_DOWN;
            self.prev *= SHIFT_DOWN;
            self.exponent += 512;
        } else if mag < BAND_INV && mag > 0.0 {
            let pmag = self.prev.re.abs().max(self.prev.im.abs());
            if pmag < 1.0 {
                self.curr *= SHIFT_UP;
                self.prev *= SHIFT_UP;
                self.exponent -= 512;
            }
        }
    }
}

/// Incremental real Hermite ladder.
pub struct HermiteLadderReal {
    x2: f64,
    prev: f64,
    curr: f64,
    exponent: i64,
    k: u32,
    started: bool,
}

impl HermiteLadderReal {
    pub fn new(x: f64) -> Self {
        assert!(x.is_finite());
        Self {
            x2: 2.0 * x,
            prev: 0.0,
            curr: 1.0,
            exponent: 0,
            k: 0,
            started: false,
        }
    }

    pub fn next_value(&mut self) -> ScaledReal {
        if !self.started {
            self.started = true;
            return ScaledReal::new(self.curr, self.exponent);
        }
        let next = self.x2 * self.curr - 2.0 * self.k as f64 * self.prev;
        self.prev = self.curr;
        self.curr = next;
        self.k += 1;
        let mag = self.curr.abs().max(self.prev.abs());
        if mag > BAND {
            self.curr *= SHIFT_DOWN;
            self.prev *= SHIFT_DOWN;
            self.exponent += 512;
        } else if mag < BAND_INV && mag > 0.0 {
            self.curr *= SHIFT_UP;
            self.prev *= SHIFT_UP;
            self.exponent -= 512;
        }
        if self.curr == 0.0 {
            ScaledReal::ZERO
        } else {
            ScaledReal::new(self.curr, self.exponent)
        }
    }
}
