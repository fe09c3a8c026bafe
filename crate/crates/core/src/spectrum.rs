//! Windowed FFT amplitude spectrum of uniformly sampled real signals.

use rustfft::{num_complex::Complex, FftPlanner};

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Angular wavenumber of each bin.
    pub k: Vec<f64>,
    /// Window-corrected single-sided amplitude.
    pub amplitude: Vec<f64>,
    /// Bin spacing `2π/(N dx)`.
    pub resolution: f64,
}

impl Spectrum {
    /// Local maxima above `threshold × max amplitude`, strongest first.
    pub fn peaks(&self, threshold: f64) -> Vec<(f64, f64)> {
        let top = self.amplitude.iter().copied().fold(0.0, f64::max);
        let mut out: Vec<(f64, f64)> = (1..self.amplitude.len().saturating_sub(1))
            .filter(|&i| {
                let a = self.amplitude[i];
                a > self.amplitude[i - 1] && a >= self.amplitude[i + 1] && a >= threshold * top
            })
            .map(|i| (self.k[i], self.amplitude[i]))
            .collect();
        out.sort_by(|a, b| b.1.total_cmp(&a.1));
        out
    }

    /// Wavenumber of the largest bin, excluding `k = 0`.
    pub fn dominant(&self) -> f64 {
        let (i, _) = self
            .amplitude
            .iter()
            .enumerate()
            .skip(1)
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("spectrum has more than one bin");
        self.k[i]
    }
}

/// Hann-windowed amplitude spectrum of `y` sampled at spacing `dx`.
pub fn amplitude_spectrum(y: &[f64], dx: f64) -> Spectrum {
    let n = y.len();
    let window: Vec<f64> = (0..n)
        .map(|i| 0.5 - 0.5 * (2.0 * std::f64::consts::PI * i as f64 / (n - 1) as f64).cos())
        .collect();
    let gain: f64 = window.iter().sum();
    let mut buf: Vec<Complex<f64>> = y
        .iter()
        .zip(&window)
        .map(|(v, w)| Complex::new(v * w, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let resolution = 2.0 * std::f64::consts::PI / (n as f64 * dx);
    let half = n / 2 + 1;
    Spectrum {
        k: (0..half).map(|i| i as f64 * resolution).collect(),
        amplitude: buf[..half].iter().map(|c| 2.0 * c.norm() / gain).collect(),
        resolution,
    }
}
