use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{reject, Result};

/// Sampled control waveforms on a time grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseSchedule {
    /// Sample times in seconds, strictly increasing from 0 to `tau`.
    pub grid: Vec<f64>,
    /// Rabi amplitude Ω (rad/s), non-negative.
    pub omega: Vec<f64>,
    /// One-photon detuning Δ (rad/s).
    pub delta: Vec<f64>,
    /// Laser phase φ₁ (rad), unwrapped.
    pub phi1: Vec<f64>,
    /// Auxiliary phase ξ (rad).
    pub xi: Vec<f64>,
    pub tau: f64,
}

impl PulseSchedule {
    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.grid.len();
        if n < 2 {
            return reject("schedule needs at least two samples");
        }
        for (name, v) in [("omega", &self.omega), ("delta", &self.delta), ("phi1", &self.phi1), ("xi", &self.xi)] {
            if v.len() != n {
                return reject(format!("schedule array {name} has {} samples, grid has {n}", v.len()));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return reject(format!("schedule array {name} contains non-finite values"));
            }
        }
        if self.grid[0] != 0.0 || self.grid[n - 1] != self.tau {
            return reject("schedule grid must run from 0 to tau");
        }
        if self.grid.windows(2).any(|w| !(w[1] > w[0])) {
            return reject("schedule grid is not strictly increasing");
        }
        if self.omega.iter().any(|&w| w < 0.0) {
            return reject("negative Rabi amplitude in schedule");
        }
        Ok(())
    }

    /// Controls at time `t` by linear interpolation: (Ω, Δ, φ₁).
    pub fn interpolate(&self, t: f64) -> Result<(f64, f64, f64)> {
        if !(t >= 0.0 && t <= self.tau) {
            return reject(format!("time {t} outside schedule [0, {}]", self.tau));
        }
        let n = self.grid.len();
        let j = match self.grid.partition_point(|&g| g <= t) {
            0 => 0,
            p if p >= n => n - 2,
            p => p - 1,
        };
        let (t0, t1) = (self.grid[j], self.grid[j + 1]);
        let w = (t - t0) / (t1 - t0);
        let lerp = |v: &[f64]| v[j] + w * (v[j + 1] - v[j]);
        Ok((lerp(&self.omega), lerp(&self.delta), lerp(&self.phi1)))
    }

    /// CSV with header `t_s,omega_rad_s,delta_rad_s,phi1_rad`, 17 significant digits.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t_s", "omega_rad_s", "delta_rad_s", "phi1_rad"])?;
        for i in 0..self.grid.len() {
            w.write_record([sci17(self.grid[i]), sci17(self.omega[i]), sci17(self.delta[i]), sci17(self.phi1[i])])?;
        }
        w.flush()?;
        Ok(())
    }
}

pub(crate) fn sci17(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> PulseSchedule {
        PulseSchedule {
            grid: vec![0.0, 1.0, 2.0],
            omega: vec![0.0, 2.0, 4.0],
            delta: vec![1.0, 1.0, 1.0],
            phi1: vec![0.0, 0.5, 1.0],
            xi: vec![0.0; 3],
            tau: 2.0,
        }
    }

    #[test]
    fn interpolation() {
        let s = toy();
        s.validate().unwrap();
        assert_eq!(s.interpolate(0.5).unwrap(), (1.0, 1.0, 0.25));
        assert_eq!(s.interpolate(2.0).unwrap(), (4.0, 1.0, 1.0));
        assert!(s.interpolate(2.0 + 1e-9).is_err());
        assert!(s.interpolate(-1e-9).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let s = toy();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "t_s,omega_rad_s,delta_rad_s,phi1_rad");
        let row: Vec<f64> = lines.nth(1).unwrap().split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(row, vec![1.0, 2.0, 1.0, 0.5]);
    }

    #[test]
    fn seventeen_digits_round_trip() {
        let x = std::f64::consts::PI * 1e9;
        assert_eq!(sci17(x).parse::<f64>().unwrap(), x);
    }
}
