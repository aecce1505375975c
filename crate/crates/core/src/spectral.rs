//! Dominant-period estimation via the discrete Fourier transform.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Period of the dominant nonzero-frequency peak of `series`.
///
/// The series is mean-removed and Hann-windowed; the peak bin is refined by
/// parabolic interpolation of the log magnitude. `sample_step` converts bins
/// to the caller's time units.
pub(crate) fn dominant_period(series: &[f64], sample_step: f64) -> Result<f64> {
    let n = series.len();
    if n < 8 {
        return Err(Error::NoPeak);
    }
    let mean = series.iter().sum::<f64>() / n as f64;
    let mut buf: Vec<Complex<f64>> = series
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let w = 0.5 * (1.0 - (2.0 * std::f64::consts::PI * i as f64 / (n - 1) as f64).cos());
            Complex::new((v - mean) * w, 0.0)
        })
        .collect();
    if buf.iter().map(|c| c.re.abs()).fold(0.0, f64::max) < 1e-12 {
        return Err(Error::NoPeak);
    }

    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let half = n / 2;
    let mags: Vec<f64> = buf[..=half].iter().map(|c| c.norm()).collect();
    let (mut peak, mut peak_mag) = (0usize, 0.0f64);
    for (k, &m) in mags.iter().enumerate().skip(1) {
        if m > peak_mag {
            peak = k;
            peak_mag = m;
        }
    }
    if peak == 0 || peak_mag <= 0.0 {
        return Err(Error::NoPeak);
    }

    let mut k_refined = peak as f64;
    if peak >= 2 && peak < half {
        let (a, b, c) = (mags[peak - 1], mags[peak], mags[peak + 1]);
        if a > 0.0 && c > 0.0 {
            let (la, lb, lc) = (a.ln(), b.ln(), c.ln());
            let denom = la - 2.0 * lb + lc;
            if denom < 0.0 {
                let delta = 0.5 * (la - lc) / denom;
                if delta.abs() <= 0.5 {
                    k_refined += delta;
                }
            }
        }
    }

    let freq = k_refined / (n as f64 * sample_step);
    Ok(1.0 / freq)
}
