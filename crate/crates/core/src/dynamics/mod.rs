//! Time evolution of the n-particle system in the canonical convention
//! `qdot_i = p_i`, `pdot_i = 2 kappa^2 sum_{k != i} (q_i - q_k)^{-3}`,
//! with conserved-quantity monitoring and the matrix form of the
//! equations of motion.

use crate::calogero::{build_lax, lax_position_derivative, PhasePoint, DEFAULT_GAP_EPS};
use crate::error::{CoreError, Result};
use crate::linalg::{hermitian_eigenvalues, FuzzyMatrix};
use crate::scalar::Real;
use num_complex::Complex;
use std::io::Write;

/// `H = (1/2) sum p_i^2 + (1/2) sum_{i != j} kappa^2/(q_i - q_j)^2`,
/// which equals `(1/2) tr L^2`.
pub fn hamiltonian<T: Real>(pt: &PhasePoint<T>) -> Result<T> {
    pt.require_distinct_default()?;
    let half = T::from_f64_c(0.5);
    let kinetic: T = pt.p().iter().map(|&p| p * p).sum();
    let kappa2 = pt.kappa() * pt.kappa();
    let q = pt.q();
    let mut interaction = T::zero();
    for i in 0..pt.n() {
        for j in 0..pt.n() {
            if i != j {
                let gap = q[i] - q[j];
                interaction += kappa2 / (gap * gap);
            }
        }
    }
    Ok(half * (kinetic + interaction))
}

/// `(1/2) tr L^2`; agrees with [`hamiltonian`] to rounding.
pub fn hamiltonian_via_lax<T: Real>(pt: &PhasePoint<T>) -> Result<T> {
    let l = build_lax(pt)?;
    Ok(T::from_f64_c(0.5) * l.matmul(&l).trace().re)
}

/// Canonical equations of motion.
pub fn equations_of_motion<T: Real>(q: &[T], p: &[T], kappa: T) -> (Vec<T>, Vec<T>) {
    let n = q.len();
    let qdot = p.to_vec();
    let two_kappa2 = T::from_f64_c(2.0) * kappa * kappa;
    let mut pdot = vec![T::zero(); n];
    for i in 0..n {
        let mut acc = T::zero();
        for k in 0..n {
            if k != i {
                let gap = q[i] - q[k];
                acc += T::one() / (gap * gap * gap);
            }
        }
        pdot[i] = two_kappa2 * acc;
    }
    (qdot, pdot)
}

/// The standard partner matrix of the isospectral form of the equations
/// of motion: diagonal `i kappa sum_{l != j} (q_j - q_l)^{-2}`,
/// off-diagonal `-i kappa (q_j - q_k)^{-2}`.
pub fn lax_partner<T: Real>(pt: &PhasePoint<T>) -> Result<FuzzyMatrix<T>> {
    pt.require_distinct_default()?;
    let n = pt.n();
    let kappa = pt.kappa();
    let q = pt.q();
    let mut m = FuzzyMatrix::zeros(n);
    for j in 0..n {
        let mut diag = T::zero();
        for l in 0..n {
            if l != j {
                let gap = q[j] - q[l];
                diag += T::one() / (gap * gap);
                m.set_entry(j, l, Complex::new(T::zero(), -kappa / (gap * gap)));
            }
        }
        m.set_entry(j, j, Complex::new(T::zero(), kappa * diag));
    }
    Ok(m)
}

/// Max-entry residual of `dL/dt = [L, M]` with `dL/dt` assembled from the
/// analytic chain rule along the flow. Exact identity; rounding only.
pub fn lax_equation_residual<T: Real>(pt: &PhasePoint<T>) -> Result<T> {
    let l = build_lax(pt)?;
    let m = lax_partner(pt)?;
    let (qdot, pdot) = equations_of_motion(pt.q(), pt.p(), pt.kappa());
    let n = pt.n();
    // dL/dt = diag(pdot) + sum_i dL/dq_i qdot_i
    let mut ldot = FuzzyMatrix::from_real_diag(&pdot);
    for i in 0..n {
        ldot = &ldot + &lax_position_derivative(pt, i).scale_real(qdot[i]);
    }
    Ok((&ldot - &l.commutator(&m)).max_norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Rk4Fixed,
    Rk4Adaptive,
}

#[derive(Debug, Clone)]
pub struct IntegrationOptions<T> {
    pub t_end: T,
    pub dt: T,
    pub method: Method,
    /// Local error tolerance per step for the adaptive method.
    pub tolerance: T,
    /// Pairwise-gap floor triggering a near-collision abort.
    pub gap_floor: T,
    /// Trace powers recorded along the trajectory.
    pub watch_powers: Vec<u32>,
    /// Record eigenvalues of the Lax matrix along the trajectory.
    pub track_spectrum: bool,
}

impl<T: Real> IntegrationOptions<T> {
    pub fn new(t_end: T, dt: T) -> Self {
        Self {
            t_end,
            dt,
            method: Method::Rk4Adaptive,
            tolerance: T::from_f64_c(1e-10),
            gap_floor: T::from_f64_c(DEFAULT_GAP_EPS),
            watch_powers: vec![2, 3, 4],
            track_spectrum: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrajectoryStatus<T> {
    Completed,
    /// Integration stopped early because a pairwise gap hit the floor;
    /// the stored states end with the last good one.
    AbortedNearCollision { t: T },
}

#[derive(Debug, Clone)]
pub struct Trajectory<T> {
    pub times: Vec<T>,
    pub states: Vec<PhasePoint<T>>,
    pub energies: Vec<T>,
    /// Watched trace powers, one row per state, aligned with `watch_powers`.
    pub watch_powers: Vec<u32>,
    pub trace_powers: Vec<Vec<T>>,
    /// Sorted spectrum per state (empty when not tracked).
    pub spectra: Vec<Vec<T>>,
    pub status: TrajectoryStatus<T>,
}

impl<T: Real> Trajectory<T> {
    pub fn last_state(&self) -> &PhasePoint<T> {
        self.states.last().expect("trajectory has at least the initial state")
    }
}

struct Recorder<'a, T: Real> {
    opts: &'a IntegrationOptions<T>,
    traj: Trajectory<T>,
}

impl<'a, T: Real> Recorder<'a, T> {
    fn record(&mut self, t: T, pt: &PhasePoint<T>) -> Result<()> {
        self.traj.times.push(t);
        self.traj.energies.push(hamiltonian(pt)?);
        let l = build_lax(pt)?;
        let row: Vec<T> = self
            .opts
            .watch_powers
            .iter()
            .map(|&k| l.pow(k).trace().re)
            .collect();
        self.traj.trace_powers.push(row);
        if self.opts.track_spectrum {
            self.traj
                .spectra
                .push(hermitian_eigenvalues(&l, T::from_f64_c(1e-10))?);
        } else {
            self.traj.spectra.push(Vec::new());
        }
        self.traj.states.push(pt.clone());
        Ok(())
    }
}

fn rk4_step<T: Real>(q: &[T], p: &[T], kappa: T, dt: T) -> (Vec<T>, Vec<T>) {
    let n = q.len();
    let half = T::from_f64_c(0.5);
    let sixth = T::from_f64_c(1.0 / 6.0);
    let two = T::from_f64_c(2.0);

    let (k1q, k1p) = equations_of_motion(q, p, kappa);
    let q2: Vec<T> = (0..n).map(|i| q[i] + half * dt * k1q[i]).collect();
    let p2: Vec<T> = (0..n).map(|i| p[i] + half * dt * k1p[i]).collect();
    let (k2q, k2p) = equations_of_motion(&q2, &p2, kappa);
    let q3: Vec<T> = (0..n).map(|i| q[i] + half * dt * k2q[i]).collect();
    let p3: Vec<T> = (0..n).map(|i| p[i] + half * dt * k2p[i]).collect();
    let (k3q, k3p) = equations_of_motion(&q3, &p3, kappa);
    let q4: Vec<T> = (0..n).map(|i| q[i] + dt * k3q[i]).collect();
    let p4: Vec<T> = (0..n).map(|i| p[i] + dt * k3p[i]).collect();
    let (k4q, k4p) = equations_of_motion(&q4, &p4, kappa);

    let qn = (0..n)
        .map(|i| q[i] + dt * sixth * (k1q[i] + two * k2q[i] + two * k3q[i] + k4q[i]))
        .collect();
    let pn = (0..n)
        .map(|i| p[i] + dt * sixth * (k1p[i] + two * k2p[i] + two * k3p[i] + k4p[i]))
        .collect();
    (qn, pn)
}

fn min_gap<T: Real>(q: &[T]) -> T {
    let mut g = T::infinity();
    for i in 0..q.len() {
        for j in (i + 1)..q.len() {
            let d = (q[i] - q[j]).abs();
            if d < g {
                g = d;
            }
        }
    }
    g
}

/// Integrates the equations of motion from `pt0`.
///
/// The fixed-step method records every step; the adaptive method uses
/// step doubling with local tolerance `opts.tolerance` (error per step,
/// scaled by the state norm) and records every accepted step. The
/// repulsive interaction keeps generic data away from collisions, but a
/// gap below `opts.gap_floor` aborts cleanly with the last good state.
pub fn integrate<T: Real>(pt0: &PhasePoint<T>, opts: &IntegrationOptions<T>) -> Result<Trajectory<T>> {
    if !(opts.dt > T::zero()) {
        return Err(CoreError::Precondition(format!(
            "dt must be positive, got {}",
            opts.dt.as_f64()
        )));
    }
    if !(opts.t_end > T::zero()) {
        return Err(CoreError::Precondition(format!(
            "t_end must be positive, got {}",
            opts.t_end.as_f64()
        )));
    }
    pt0.require_distinct(opts.gap_floor)?;

    let mut rec = Recorder {
        opts,
        traj: Trajectory {
            times: Vec::new(),
            states: Vec::new(),
            energies: Vec::new(),
            watch_powers: opts.watch_powers.clone(),
            trace_powers: Vec::new(),
            spectra: Vec::new(),
            status: TrajectoryStatus::Completed,
        },
    };

    let kappa = pt0.kappa();
    let mut t = T::zero();
    let mut q = pt0.q().to_vec();
    let mut p = pt0.p().to_vec();
    rec.record(t, pt0)?;

    let mut dt = opts.dt;
    let safety = T::from_f64_c(0.9);
    let order_root = T::from_f64_c(0.2); // 1/5 for the rk4 error estimate

    while t < opts.t_end {
        let remaining = opts.t_end - t;
        let proposal = dt.min(remaining);
        let (qn, pn, taken) = match opts.method {
            Method::Rk4Fixed => {
                let (qn, pn) = rk4_step(&q, &p, kappa, proposal);
                (qn, pn, proposal)
            }
            Method::Rk4Adaptive => {
                // step doubling: compare one full step with two half steps
                let mut step = proposal;
                loop {
                    let (q_full, p_full) = rk4_step(&q, &p, kappa, step);
                    let half = step * T::from_f64_c(0.5);
                    let (qh, ph) = rk4_step(&q, &p, kappa, half);
                    let (q_two, p_two) = rk4_step(&qh, &ph, kappa, half);
                    let mut err = T::zero();
                    let mut scale = T::one();
                    for i in 0..q.len() {
                        err = err.max((q_full[i] - q_two[i]).abs());
                        err = err.max((p_full[i] - p_two[i]).abs());
                        scale = scale.max(q_two[i].abs()).max(p_two[i].abs());
                    }
                    err = err / T::from_f64_c(15.0);
                    let tol = opts.tolerance * scale;
                    if err <= tol {
                        // accept, grow the next step gently
                        let grow = if err > T::zero() {
                            (tol / err).powf(order_root).min(T::from_f64_c(4.0))
                        } else {
                            T::from_f64_c(4.0)
                        };
                        dt = safety * step * grow;
                        break (q_two, p_two, step);
                    }
                    let shrink = (tol / err).powf(order_root).max(T::from_f64_c(0.1));
                    step = safety * step * shrink;
                    if step < T::from_f64_c(1e-14) {
                        return Err(CoreError::Stiffness {
                            t: t.as_f64(),
                            dt: step.as_f64(),
                        });
                    }
                }
            }
        };

        if min_gap(&qn) <= opts.gap_floor {
            rec.traj.status = TrajectoryStatus::AbortedNearCollision { t };
            return Ok(rec.traj);
        }

        t += taken;
        q = qn;
        p = pn;
        let state = pt0.with_state(q.clone(), p.clone())?;
        rec.record(t, &state)?;
        if taken <= T::zero() {
            break;
        }
    }

    Ok(rec.traj)
}

#[derive(Debug, Clone)]
pub struct ConservationReport<T> {
    /// `(power, max relative drift of tr L^power)`.
    pub trace_drift: Vec<(u32, T)>,
    /// Max relative drift over all sorted eigenvalues.
    pub spectrum_drift: T,
    pub energy_drift: T,
}

/// Relative drifts of the watched invariants along a trajectory.
pub fn conservation_report<T: Real>(traj: &Trajectory<T>) -> ConservationReport<T> {
    let floor = T::from_f64_c(1e-12);
    let mut trace_drift = Vec::new();
    for (col, &power) in traj.watch_powers.iter().enumerate() {
        let first = traj.trace_powers[0][col];
        let denom = first.abs().max(floor);
        let mut worst = T::zero();
        for row in &traj.trace_powers {
            worst = worst.max((row[col] - first).abs() / denom);
        }
        trace_drift.push((power, worst));
    }

    let mut spectrum_drift = T::zero();
    if traj.spectra.iter().all(|s| !s.is_empty()) {
        let first = &traj.spectra[0];
        let denom = first
            .iter()
            .fold(T::zero(), |acc, v| acc.max(v.abs()))
            .max(floor);
        for s in &traj.spectra {
            for (a, b) in s.iter().zip(first.iter()) {
                spectrum_drift = spectrum_drift.max((*a - *b).abs() / denom);
            }
        }
    }

    let e0 = traj.energies[0];
    let denom = e0.abs().max(floor);
    let energy_drift = traj
        .energies
        .iter()
        .fold(T::zero(), |acc, &e| acc.max((e - e0).abs() / denom));

    ConservationReport {
        trace_drift,
        spectrum_drift,
        energy_drift,
    }
}

/// Writes the trajectory as CSV with columns
/// `t, q_1..q_n, p_1..p_n, H, trL2.., eig_1..eig_n`.
pub fn write_trajectory_csv<T: Real>(traj: &Trajectory<T>, out: &mut impl Write) -> std::io::Result<()> {
    let n = traj.states[0].n();
    let mut header = String::from("t");
    for i in 1..=n {
        header.push_str(&format!(",q_{i}"));
    }
    for i in 1..=n {
        header.push_str(&format!(",p_{i}"));
    }
    header.push_str(",H");
    for k in &traj.watch_powers {
        header.push_str(&format!(",trL{k}"));
    }
    if traj.spectra.iter().all(|s| !s.is_empty()) {
        for i in 1..=n {
            header.push_str(&format!(",eig_{i}"));
        }
    }
    writeln!(out, "{header}")?;
    for (idx, state) in traj.states.iter().enumerate() {
        let mut line = format!("{:.17e}", traj.times[idx].as_f64());
        for v in state.q() {
            line.push_str(&format!(",{:.17e}", v.as_f64()));
        }
        for v in state.p() {
            line.push_str(&format!(",{:.17e}", v.as_f64()));
        }
        line.push_str(&format!(",{:.17e}", traj.energies[idx].as_f64()));
        for v in &traj.trace_powers[idx] {
            line.push_str(&format!(",{:.17e}", v.as_f64()));
        }
        for v in &traj.spectra[idx] {
            line.push_str(&format!(",{:.17e}", v.as_f64()));
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// Two-body relative energy `E_rel = (1/4) rdot^2 + kappa^2 / r^2`.
pub fn two_body_relative_energy<T: Real>(r0: T, rdot0: T, kappa: T) -> T {
    T::from_f64_c(0.25) * rdot0 * rdot0 + kappa * kappa / (r0 * r0)
}

/// Closed-form squared separation of the two-body system:
/// `r^2(t) = r0^2 + 2 r0 rdot0 t + 4 E_rel t^2`.
///
/// Follows from `d^2(r^2)/dt^2 = 2 rdot^2 + 2 r rddot = 8 E_rel` with
/// `rddot = 4 kappa^2 / r^3` and conservation of `E_rel`.
pub fn two_body_separation_squared<T: Real>(t: T, r0: T, rdot0: T, e_rel: T) -> T {
    r0 * r0 + T::from_f64_c(2.0) * r0 * rdot0 * t + T::from_f64_c(4.0) * e_rel * t * t
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn symmetric_pair(r: f64, v: f64, c: f64) -> PhasePoint<f64> {
        PhasePoint::new(vec![r / 2.0, -r / 2.0], vec![v, -v], c).unwrap()
    }

    #[test]
    fn hamiltonian_examples() {
        // kinetic only
        let free = PhasePoint::new(vec![0.3f64, -0.4], vec![1.0, 2.0], 0.0).unwrap();
        assert!((hamiltonian(&free).unwrap() - 2.5).abs() < 1e-15);
        // n = 2, q = (1, -1), p = 0, c = 1: H = 1/16
        let pt = PhasePoint::new(vec![1.0f64, -1.0], vec![0.0, 0.0], 1.0).unwrap();
        assert!((hamiltonian(&pt).unwrap() - 0.0625).abs() < 1e-15);
        assert!((hamiltonian_via_lax(&pt).unwrap() - 0.0625).abs() < 1e-15);
    }

    #[test]
    fn hamiltonian_routes_agree_on_random_points() {
        use crate::calogero::random_phase_point;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let pt = random_phase_point::<f64>(7, 1.4, &mut rng);
            let a = hamiltonian(&pt).unwrap();
            let b = hamiltonian_via_lax(&pt).unwrap();
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        }
    }

    #[test]
    fn free_flight_is_exact() {
        let pt = PhasePoint::new(vec![0.5f64, -0.5, 1.5], vec![0.2, -0.1, 0.4], 0.0).unwrap();
        let mut opts = IntegrationOptions::new(2.0, 0.05);
        opts.method = Method::Rk4Fixed;
        opts.track_spectrum = false;
        let traj = integrate(&pt, &opts).unwrap();
        let last = traj.last_state();
        let t = *traj.times.last().unwrap();
        for i in 0..3 {
            assert!((last.q()[i] - (pt.q()[i] + pt.p()[i] * t)).abs() < 1e-13);
            assert!((last.p()[i] - pt.p()[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn two_body_oracle_self_consistency() {
        // the closed form satisfies the equations of motion: check
        // d^2(r^2)/dt^2 = 8 E_rel by finite differences, and E_rel
        // conservation along the law itself
        let (r0, v, c) = (2.0f64, -0.3, 1.0);
        let kappa = c / 2.0;
        let rdot0 = 2.0 * v; // dr/dt = p1 - p2
        let e = two_body_relative_energy(r0, rdot0, kappa);
        let h = 1e-4;
        for &t in &[0.0, 0.5, 2.0, 7.0] {
            let d2 = (two_body_separation_squared(t + h, r0, rdot0, e)
                - 2.0 * two_body_separation_squared(t, r0, rdot0, e)
                + two_body_separation_squared(t - h, r0, rdot0, e))
                / (h * h);
            assert!((d2 - 8.0 * e).abs() < 1e-6);
        }
    }

    #[test]
    fn two_body_matches_oracle() {
        let (r0, v, c) = (2.0f64, -0.3, 1.0);
        let pt = symmetric_pair(r0, v, c);
        let kappa = pt.kappa();
        let rdot0 = 2.0 * v;
        let e_rel = two_body_relative_energy(r0, rdot0, kappa);
        let mut opts = IntegrationOptions::new(10.0, 0.01);
        opts.tolerance = 1e-11;
        opts.track_spectrum = false;
        let traj = integrate(&pt, &opts).unwrap();
        assert!(matches!(traj.status, TrajectoryStatus::Completed));
        let mut worst: f64 = 0.0;
        for (idx, state) in traj.states.iter().enumerate() {
            let r = state.q()[0] - state.q()[1];
            let expect = two_body_separation_squared(traj.times[idx], r0, rdot0, e_rel);
            worst = worst.max(((r * r - expect) / expect).abs());
        }
        assert!(worst <= 1e-6, "two-body relative error {worst:.3e}");
    }

    #[test]
    fn time_reversal_returns_to_start() {
        let pt = PhasePoint::new(vec![1.1f64, 0.2, -0.9], vec![-0.4, 0.6, 0.1], 1.0).unwrap();
        let mut opts = IntegrationOptions::new(3.0, 0.01);
        opts.tolerance = 1e-11;
        opts.track_spectrum = false;
        let fwd = integrate(&pt, &opts).unwrap();
        let end = fwd.last_state();
        let flipped = PhasePoint::new(
            end.q().to_vec(),
            end.p().iter().map(|p| -p).collect(),
            pt.coupling(),
        )
        .unwrap();
        let back = integrate(&flipped, &opts).unwrap();
        let ret = back.last_state();
        for i in 0..3 {
            assert!((ret.q()[i] - pt.q()[i]).abs() < 1e-7);
            assert!((-ret.p()[i] - pt.p()[i]).abs() < 1e-7);
        }
    }

    #[test]
    fn lax_equation_residual_examples() {
        // c = 0: dL/dt = 0 = [diag(p), 0]
        let free = PhasePoint::new(vec![0.3f64, -0.8], vec![1.0, -2.0], 0.0).unwrap();
        assert!(lax_equation_residual(&free).unwrap() == 0.0);

        // n = 2, q = (1, -1), p = 0, c = 1: diagonal of [L, M] is (1/16, -1/16)
        let pt = PhasePoint::new(vec![1.0f64, -1.0], vec![0.0, 0.0], 1.0).unwrap();
        let l = build_lax(&pt).unwrap();
        let m = lax_partner(&pt).unwrap();
        let comm = l.commutator(&m);
        assert!((comm.entry(0, 0) - Complex64::new(0.0625, 0.0)).norm() < 1e-15);
        assert!((comm.entry(1, 1) - Complex64::new(-0.0625, 0.0)).norm() < 1e-15);
        assert!(lax_equation_residual(&pt).unwrap() <= 1e-15);

        // n = 8 random
        use crate::calogero::random_phase_point;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for _ in 0..10 {
            let pt = random_phase_point::<f64>(8, 1.0, &mut rng);
            assert!(lax_equation_residual(&pt).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn conservation_free_and_symmetric() {
        // kappa = 0: trace powers exactly constant
        let free = PhasePoint::new(vec![0.5f64, -0.5, 1.0], vec![0.3, 0.9, -0.2], 0.0).unwrap();
        let mut opts = IntegrationOptions::new(1.0, 0.02);
        opts.method = Method::Rk4Fixed;
        let traj = integrate(&free, &opts).unwrap();
        let rep = conservation_report(&traj);
        for (_, drift) in &rep.trace_drift {
            assert!(*drift < 1e-13);
        }
        // symmetric two-body data: tr L = 0 for all time
        let pt = symmetric_pair(2.0, -0.4, 1.0);
        let mut opts = IntegrationOptions::new(2.0, 0.01);
        opts.watch_powers = vec![1];
        opts.track_spectrum = false;
        let traj = integrate(&pt, &opts).unwrap();
        for row in &traj.trace_powers {
            assert!(row[0].abs() < 1e-12);
        }
    }

    #[test]
    fn conservation_n8_drift() {
        use crate::calogero::random_phase_point;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        let pt = random_phase_point::<f64>(8, 1.0, &mut rng);
        let mut opts = IntegrationOptions::new(10.0, 0.01);
        opts.tolerance = 1e-10;
        let traj = integrate(&pt, &opts).unwrap();
        assert!(matches!(traj.status, TrajectoryStatus::Completed));
        let rep = conservation_report(&traj);
        for (k, drift) in &rep.trace_drift {
            assert!(*drift <= 1e-8, "tr L^{k} drift {drift:.3e}");
        }
        assert!(rep.spectrum_drift <= 1e-8, "spectrum drift {:.3e}", rep.spectrum_drift);
        assert!(rep.energy_drift <= 1e-8, "energy drift {:.3e}", rep.energy_drift);
    }

    #[test]
    fn scattering_momenta_approach_initial_spectrum() {
        // two particles heading for a collision exchange momenta; the
        // asymptotic momenta are the (time-invariant) eigenvalues of L
        let pt = PhasePoint::new(vec![3.0f64, -3.0], vec![-0.5, 0.5], 1.0).unwrap();
        let l = build_lax(&pt).unwrap();
        let eigen = hermitian_eigenvalues(&l, 1e-12).unwrap();
        let mut opts = IntegrationOptions::new(200.0, 0.05);
        opts.tolerance = 1e-10;
        opts.track_spectrum = false;
        opts.watch_powers = vec![2];
        let traj = integrate(&pt, &opts).unwrap();
        let mut final_p = traj.last_state().p().to_vec();
        final_p.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in final_p.iter().zip(eigen.iter()) {
            assert!((a - b).abs() <= 1e-4, "{a} vs {b}");
        }
    }

    #[test]
    fn near_collision_aborts_cleanly() {
        // head-on with tiny coupling: slow approach but finite gap floor hit
        let pt = PhasePoint::new(vec![0.05f64, -0.05], vec![-2.0, 2.0], 1e-6).unwrap();
        let mut opts = IntegrationOptions::new(1.0, 1e-3);
        opts.method = Method::Rk4Fixed;
        opts.gap_floor = 0.02;
        opts.track_spectrum = false;
        let traj = integrate(&pt, &opts).unwrap();
        assert!(matches!(traj.status, TrajectoryStatus::AbortedNearCollision { .. }));
        let last = traj.last_state();
        assert!((last.q()[0] - last.q()[1]).abs() > 0.02);
    }

    #[test]
    fn csv_export_shape() {
        let pt = symmetric_pair(2.0, -0.3, 1.0);
        let mut opts = IntegrationOptions::new(0.1, 0.05);
        opts.method = Method::Rk4Fixed;
        let traj = integrate(&pt, &opts).unwrap();
        let mut buf = Vec::new();
        write_trajectory_csv(&traj, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        let header = lines.next().unwrap();
        assert_eq!(
            header,
            "t,q_1,q_2,p_1,p_2,H,trL2,trL3,trL4,eig_1,eig_2"
        );
        let cols = header.split(',').count();
        for line in lines {
            assert_eq!(line.split(',').count(), cols);
        }
    }
}
