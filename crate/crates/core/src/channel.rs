//! The combined amplitude-damping and dephasing channel, its Kraus form,
//! Pauli twirling, and the asymmetric channel parameterizations the
//! simulator consumes.

use crate::error::{Error, Result};

pub const TWIRL_TOL: f64 = 1e-12;

/// Minimal complex arithmetic; everything here is 2×2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C64 {
    pub re: f64,
    pub im: f64,
}

impl C64 {
    pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
    pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
    pub const I: C64 = C64 { re: 0.0, im: 1.0 };

    pub fn new(re: f64, im: f64) -> C64 {
        C64 { re, im }
    }

    pub fn real(re: f64) -> C64 {
        C64 { re, im: 0.0 }
    }

    pub fn add(self, o: C64) -> C64 {
        C64::new(self.re + o.re, self.im + o.im)
    }

    pub fn sub(self, o: C64) -> C64 {
        C64::new(self.re - o.re, self.im - o.im)
    }

    pub fn mul(self, o: C64) -> C64 {
        C64::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }

    pub fn scale(self, s: f64) -> C64 {
        C64::new(self.re * s, self.im * s)
    }

    pub fn conj(self) -> C64 {
        C64::new(self.re, -self.im)
    }

    pub fn norm(self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// 2×2 complex matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub fn zero() -> Mat2 {
        Mat2([[C64::ZERO; 2]; 2])
    }

    pub fn identity() -> Mat2 {
        Mat2([[C64::ONE, C64::ZERO], [C64::ZERO, C64::ONE]])
    }

    pub fn pauli_x() -> Mat2 {
        Mat2([[C64::ZERO, C64::ONE], [C64::ONE, C64::ZERO]])
    }

    pub fn pauli_y() -> Mat2 {
        Mat2([
            [C64::ZERO, C64::new(0.0, -1.0)],
            [C64::I, C64::ZERO],
        ])
    }

    pub fn pauli_z() -> Mat2 {
        Mat2([
            [C64::ONE, C64::ZERO],
            [C64::ZERO, C64::real(-1.0)],
        ])
    }

    pub fn add(self, o: Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j].add(o.0[i][j]);
            }
        }
        out
    }

    pub fn mul(self, o: Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = C64::ZERO;
                for k in 0..2 {
                    acc = acc.add(self.0[i][k].mul(o.0[k][j]));
                }
                out.0[i][j] = acc;
            }
        }
        out
    }

    pub fn scale(self, s: f64) -> Mat2 {
        let mut out = self;
        for row in out.0.iter_mut() {
            for v in row.iter_mut() {
                *v = v.scale(s);
            }
        }
        out
    }

    pub fn dagger(self) -> Mat2 {
        Mat2([
            [self.0[0][0].conj(), self.0[1][0].conj()],
            [self.0[0][1].conj(), self.0[1][1].conj()],
        ])
    }

    pub fn trace(self) -> C64 {
        self.0[0][0].add(self.0[1][1])
    }

    pub fn max_abs_diff(self, o: Mat2) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max(self.0[i][j].sub(o.0[i][j]).norm());
            }
        }
        m
    }
}

/// Relaxation/dephasing parameters with exposure time, all in seconds.
/// Complete positivity of the Kraus set requires T2 ≤ 2·T1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxationParams {
    t1: f64,
    t2: f64,
    t: f64,
}

impl RelaxationParams {
    pub fn new(t1: f64, t2: f64, t: f64) -> Result<RelaxationParams> {
        if !(t1 > 0.0 && t2 > 0.0 && t > 0.0) {
            return Err(Error::invalid("T1, T2 and t must all be positive"));
        }
        if t2 > 2.0 * t1 {
            return Err(Error::invalid(format!(
                "T2 = {t2} exceeds 2*T1 = {}; the Kraus set would not be completely positive",
                2.0 * t1
            )));
        }
        Ok(RelaxationParams { t1, t2, t })
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn t2(&self) -> f64 {
        self.t2
    }

    pub fn t(&self) -> f64 {
        self.t
    }
}

/// Single-qubit density matrix: Hermitian, trace one, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(pub Mat2);

impl DensityMatrix {
    pub fn new(m: Mat2) -> Result<DensityMatrix> {
        const TOL: f64 = 1e-12;
        if m.max_abs_diff(m.dagger()) > TOL {
            return Err(Error::invalid("density matrix must be Hermitian"));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TOL || tr.im.abs() > TOL {
            return Err(Error::invalid("density matrix must have unit trace"));
        }
        // 2x2 Hermitian: eigenvalues nonnegative iff trace >= 0 and det >= 0
        let det = m.0[0][0].mul(m.0[1][1]).sub(m.0[0][1].mul(m.0[1][0]));
        if det.re < -TOL {
            return Err(Error::invalid("density matrix must be positive semidefinite"));
        }
        Ok(DensityMatrix(m))
    }

    pub fn ket0() -> DensityMatrix {
        DensityMatrix(Mat2([
            [C64::ONE, C64::ZERO],
            [C64::ZERO, C64::ZERO],
        ]))
    }

    pub fn ket1() -> DensityMatrix {
        DensityMatrix(Mat2([
            [C64::ZERO, C64::ZERO],
            [C64::ZERO, C64::ONE],
        ]))
    }

    pub fn ket_plus() -> DensityMatrix {
        DensityMatrix(Mat2([
            [C64::real(0.5), C64::real(0.5)],
            [C64::real(0.5), C64::real(0.5)],
        ]))
    }
}

/// Kraus operators of the combined channel, with the derived damping and
/// dephasing scalars γ = 1 − e^{−t/T1} and λ = e^{−t/T1} − e^{−2t/T2}.
#[derive(Debug, Clone)]
pub struct KrausSet {
    pub ops: Vec<Mat2>,
    pub gamma: f64,
    pub lambda: f64,
}

impl KrausSet {
    /// Sum A_k† A_k, which must be the identity.
    pub fn completeness(&self) -> Mat2 {
        let mut acc = Mat2::zero();
        for a in &self.ops {
            acc = acc.add(a.dagger().mul(*a));
        }
        acc
    }
}

/// Kraus decomposition: A_0 = diag(1, √(1−λ−γ)), A_1 = [[0,0],[0,√λ]],
/// A_2 = [[0,√γ],[0,0]], pinned to e^{−t/T2} = √(1−λ−γ) and
/// e^{−t/T1} = 1 − γ.
pub fn kraus_ops(params: &RelaxationParams) -> Result<KrausSet> {
    let gamma = 1.0 - (-params.t / params.t1).exp();
    let lambda = (-params.t / params.t1).exp() - (-2.0 * params.t / params.t2).exp();
    if lambda < 0.0 {
        return Err(Error::invalid(format!(
            "negative dephasing weight lambda = {lambda}; requires T2 <= 2*T1"
        )));
    }
    // √(1−λ−γ) equals e^{−t/T2}; using the exponential form avoids the
    // cancellation in 1−λ−γ when that difference is near the rounding floor.
    let a0 = Mat2([
        [C64::ONE, C64::ZERO],
        [C64::ZERO, C64::real((-params.t / params.t2).exp())],
    ]);
    let a1 = Mat2([
        [C64::ZERO, C64::ZERO],
        [C64::ZERO, C64::real(lambda.sqrt())],
    ]);
    let a2 = Mat2([
        [C64::ZERO, C64::real(gamma.sqrt())],
        [C64::ZERO, C64::ZERO],
    ]);
    let set = KrausSet {
        ops: vec![a0, a1, a2],
        gamma,
        lambda,
    };
    let leak = set.completeness().max_abs_diff(Mat2::identity());
    if leak > TWIRL_TOL {
        return Err(Error::internal(format!(
            "Kraus completeness violated by {leak:e}"
        )));
    }
    Ok(set)
}

/// Apply the channel: ρ ↦ Σ A_k ρ A_k†.
pub fn apply_channel(k: &KrausSet, rho: &DensityMatrix) -> DensityMatrix {
    let mut out = Mat2::zero();
    for a in &k.ops {
        out = out.add(a.mul(rho.0).mul(a.dagger()));
    }
    DensityMatrix(out)
}

/// A Pauli channel (p_x, p_y, p_z) with identity weight 1 − p_x − p_y − p_z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliChannel {
    pub p_x: f64,
    pub p_y: f64,
    pub p_z: f64,
}

impl PauliChannel {
    pub fn new(p_x: f64, p_y: f64, p_z: f64) -> Result<PauliChannel> {
        let p_i = 1.0 - p_x - p_y - p_z;
        for (name, v) in [("p_x", p_x), ("p_y", p_y), ("p_z", p_z), ("p_i", p_i)] {
            if !(-TWIRL_TOL..=1.0 + TWIRL_TOL).contains(&v) {
                return Err(Error::invalid(format!("{name} = {v} outside [0, 1]")));
            }
        }
        Ok(PauliChannel { p_x, p_y, p_z })
    }

    pub fn p_i(&self) -> f64 {
        1.0 - self.p_x - self.p_y - self.p_z
    }

    /// Channel asymmetry p_z / p_x.
    pub fn asymmetry(&self) -> Result<f64> {
        if self.p_x == 0.0 {
            return Err(Error::invalid("asymmetry undefined: p_x = 0"));
        }
        Ok(self.p_z / self.p_x)
    }
}

/// Twirl the channel numerically: E_T(ρ) = (1/4) Σ_A A† E(AρA†) A over the
/// four Paulis, then read the error probabilities off the diagonal of the
/// Pauli-basis process matrix. Off-diagonal process entries must vanish.
pub fn pauli_twirl_numeric(k: &KrausSet) -> Result<PauliChannel> {
    let paulis = [
        Mat2::identity(),
        Mat2::pauli_x(),
        Mat2::pauli_y(),
        Mat2::pauli_z(),
    ];
    let twirled = |rho: Mat2| -> Mat2 {
        let mut acc = Mat2::zero();
        for a in &paulis {
            let conj_in = a.mul(rho).mul(a.dagger());
            let mut out = Mat2::zero();
            for op in &k.ops {
                out = out.add(op.mul(conj_in).mul(op.dagger()));
            }
            acc = acc.add(a.dagger().mul(out).mul(*a));
        }
        acc.scale(0.25)
    };
    // Superoperator in the Pauli basis: S[P][Q] = tr(P · E_T(Q)) / 2.
    let mut s = [[C64::ZERO; 4]; 4];
    for (qi, q) in paulis.iter().enumerate() {
        let image = twirled(*q);
        for (pi, p) in paulis.iter().enumerate() {
            s[pi][qi] = p.mul(image).trace().scale(0.5);
        }
    }
    // For a Pauli channel the matrix is diagonal and real, and trace
    // preservation pins the identity component to 1.
    for (i, row) in s.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i != j && v.norm() > TWIRL_TOL {
                return Err(Error::internal(format!(
                    "twirled map has off-diagonal process entry {:e}",
                    v.norm()
                )));
            }
            if v.im.abs() > TWIRL_TOL {
                return Err(Error::internal("twirled process matrix is not real"));
            }
        }
    }
    if (s[0][0].re - 1.0).abs() > TWIRL_TOL {
        return Err(Error::internal("twirled map is not trace preserving"));
    }
    // diag = M (q_i, q_x, q_y, q_z) with M the commutation-sign matrix;
    // M is 4x4 symmetric with M^2 = 4I, so M^{-1} = M/4.
    let m = [
        [1.0, 1.0, 1.0, 1.0],
        [1.0, 1.0, -1.0, -1.0],
        [1.0, -1.0, 1.0, -1.0],
        [1.0, -1.0, -1.0, 1.0],
    ];
    let diag = [s[0][0].re, s[1][1].re, s[2][2].re, s[3][3].re];
    let mut q = [0.0; 4];
    for (i, qi) in q.iter_mut().enumerate() {
        *qi = (0..4).map(|j| m[i][j] * diag[j]).sum::<f64>() / 4.0;
    }
    PauliChannel::new(q[1], q[2], q[3])
}

/// Closed-form twirl: p_x = p_y = (1 − e^{−t/T1})/4 and
/// p_z = 1/2 − p_x − e^{−t/T2}/2.
pub fn pauli_twirl_closed(params: &RelaxationParams) -> Result<PauliChannel> {
    let px = (1.0 - (-params.t / params.t1).exp()) / 4.0;
    let pz = 0.5 - px - 0.5 * (-params.t / params.t2).exp();
    PauliChannel::new(px, px, pz)
}

/// Exact channel asymmetry 1 + 2(1 − e^{(t/T1)(1 − T1/T2)})/(e^{t/T1} − 1).
pub fn asymmetry_exact(params: &RelaxationParams) -> Result<f64> {
    let x = params.t / params.t1;
    let ratio = params.t1 / params.t2;
    let denom = x.exp() - 1.0;
    if denom == 0.0 {
        return Err(Error::invalid("asymmetry undefined at t = 0"));
    }
    Ok(1.0 + 2.0 * (1.0 - (x * (1.0 - ratio)).exp()) / denom)
}

/// Small-exposure approximation 2·T1/T2 − 1.
pub fn asymmetry_approx(t1: f64, t2: f64) -> f64 {
    2.0 * t1 / t2 - 1.0
}

/// Channel from total error probability and asymmetry:
/// p_x = p_y = p/(A+2), p_z = pA/(A+2).
pub fn pauli_from_total(p: f64, asymmetry: f64) -> Result<PauliChannel> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("total probability {p} outside [0, 1]")));
    }
    if asymmetry < 0.0 {
        return Err(Error::invalid("asymmetry must be nonnegative"));
    }
    let px = p / (asymmetry + 2.0);
    PauliChannel::new(px, px, asymmetry * px)
}

/// Crossover probabilities of the two independent binary symmetric channels:
/// ε_x = p_x + p_y = 2p/(A+2) for bit flips and
/// ε_z = p_y + p_z = p(A+1)/(A+2) for phase flips.
pub fn bsc_crossovers(p: f64, asymmetry: f64) -> Result<(f64, f64)> {
    let ch = pauli_from_total(p, asymmetry)?;
    Ok((ch.p_x + ch.p_y, ch.p_y + ch.p_z))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn halflife() -> RelaxationParams {
        RelaxationParams::new(1.0, 1.0, std::f64::consts::LN_2).unwrap()
    }

    #[test]
    fn kraus_scalars_at_halflife() {
        let k = kraus_ops(&halflife()).unwrap();
        assert!((k.gamma - 0.5).abs() < 1e-15);
        assert!((k.lambda - 0.25).abs() < 1e-15);
    }

    #[test]
    fn kraus_no_evolution_limit() {
        let p = RelaxationParams::new(1.0, 1.0, 1e-12).unwrap();
        let k = kraus_ops(&p).unwrap();
        assert!(k.gamma < 2e-12);
        assert!(k.lambda < 2e-12);
        assert!(k.ops[0].max_abs_diff(Mat2::identity()) < 1e-11);
    }

    #[test]
    fn cp_condition() {
        assert!(RelaxationParams::new(1.0, 2.1, 0.5).is_err());
        assert!(RelaxationParams::new(1.0, 2.0, 0.5).is_ok());
        assert!(RelaxationParams::new(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn channel_matrix_form() {
        // ground state is a fixed point
        let p = RelaxationParams::new(2.0, 1.0, 0.3).unwrap();
        let k = kraus_ops(&p).unwrap();
        let out = apply_channel(&k, &DensityMatrix::ket0());
        assert!(out.0.max_abs_diff(DensityMatrix::ket0().0) < 1e-15);
        // excited state decays to diag(1 - e^{-t/T1}, e^{-t/T1})
        let out = apply_channel(&k, &DensityMatrix::ket1());
        let decay = (-0.3f64 / 2.0).exp();
        assert!((out.0 .0[1][1].re - decay).abs() < 1e-15);
        assert!((out.0 .0[0][0].re - (1.0 - decay)).abs() < 1e-15);
        // plus state off-diagonals shrink by e^{-t/T2}
        let out = apply_channel(&k, &DensityMatrix::ket_plus());
        assert!((out.0 .0[0][1].re - 0.5 * (-0.3f64).exp()).abs() < 1e-15);
        // trace preserved
        assert!((out.0.trace().re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn plus_state_halflife() {
        let k = kraus_ops(&halflife()).unwrap();
        let out = apply_channel(&k, &DensityMatrix::ket_plus());
        assert!((out.0 .0[0][1].re - 0.25).abs() < 1e-15);
    }

    #[test]
    fn identity_channel_twirls_to_zero_rates() {
        let k = KrausSet {
            ops: vec![Mat2::identity()],
            gamma: 0.0,
            lambda: 0.0,
        };
        let ch = pauli_twirl_numeric(&k).unwrap();
        assert!(ch.p_x.abs() < TWIRL_TOL);
        assert!(ch.p_y.abs() < TWIRL_TOL);
        assert!(ch.p_z.abs() < TWIRL_TOL);
    }

    #[test]
    fn twirl_matches_closed_form_at_halflife() {
        let params = halflife();
        let k = kraus_ops(&params).unwrap();
        let numeric = pauli_twirl_numeric(&k).unwrap();
        let closed = pauli_twirl_closed(&params).unwrap();
        for (a, b) in [
            (numeric.p_x, closed.p_x),
            (numeric.p_y, closed.p_y),
            (numeric.p_z, closed.p_z),
        ] {
            assert!((a - b).abs() < TWIRL_TOL);
        }
        assert!((closed.p_x - 0.125).abs() < 1e-15);
        assert!((closed.p_z - 0.125).abs() < 1e-15);
    }

    #[test]
    fn asymmetry_is_one_when_times_match() {
        let params = RelaxationParams::new(3.0, 3.0, 0.123).unwrap();
        let a = asymmetry_exact(&params).unwrap();
        assert_eq!(a, 1.0);
        let ch = pauli_twirl_closed(&params).unwrap();
        assert!((ch.asymmetry().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn asymmetry_matches_ratio_of_probabilities() {
        for (t1, t2, t) in [(1.0, 0.5, 0.01), (2.0, 0.3, 0.05), (1.0, 1.9, 0.2)] {
            let params = RelaxationParams::new(t1, t2, t).unwrap();
            let ch = pauli_twirl_closed(&params).unwrap();
            let direct = ch.asymmetry().unwrap();
            let formula = asymmetry_exact(&params).unwrap();
            assert!(
                (direct - formula).abs() <= 1e-9 * direct.abs().max(1.0),
                "{direct} vs {formula}"
            );
        }
    }

    #[test]
    fn approx_asymmetry_at_small_t_ratio_10() {
        let params = RelaxationParams::new(1.0, 0.1, 1e-3).unwrap();
        let exact = asymmetry_exact(&params).unwrap();
        let approx = asymmetry_approx(1.0, 0.1);
        assert!((exact - approx).abs() / approx < 0.01, "{exact} vs {approx}");
    }

    #[test]
    fn asymmetry_monotone_in_time_ratio() {
        for &x in &[0.001, 0.01, 0.1, 0.5, 1.0] {
            let mut prev = 0.0;
            for i in 1..=40 {
                let ratio = 0.5 + i as f64 * 0.25; // T1/T2 from 0.75 to 10.5
                let params = RelaxationParams::new(1.0, 1.0 / ratio, x).unwrap();
                let a = asymmetry_exact(&params).unwrap();
                assert!(a > prev, "A not increasing at t/T1 = {x}, T1/T2 = {ratio}");
                prev = a;
            }
        }
    }

    #[test]
    fn crossovers_monotone_in_asymmetry() {
        // at fixed p, growing asymmetry shrinks eps_x and grows eps_z
        let p = 0.04;
        let mut prev = bsc_crossovers(p, 1.0).unwrap();
        for i in 1..=50 {
            let a = 1.0 + i as f64 * 2.0;
            let cur = bsc_crossovers(p, a).unwrap();
            assert!(cur.0 < prev.0 && cur.1 > prev.1, "A = {a}");
            prev = cur;
        }
        // at A = 1 the two crossovers coincide
        let (ex, ez) = bsc_crossovers(0.3, 1.0).unwrap();
        assert_eq!(ex, ez);
    }

    #[test]
    fn split_by_total_probability() {
        let ch = pauli_from_total(0.3, 1.0).unwrap();
        assert!((ch.p_x - 0.1).abs() < 1e-15);
        assert!((ch.p_y - 0.1).abs() < 1e-15);
        assert!((ch.p_z - 0.1).abs() < 1e-15);
        let ch = pauli_from_total(0.03, 10.0).unwrap();
        assert!((ch.p_x - 0.0025).abs() < 1e-15);
        assert!((ch.p_z - 0.025).abs() < 1e-15);
        let ch = pauli_from_total(0.0, 5.0).unwrap();
        assert_eq!((ch.p_x, ch.p_y, ch.p_z), (0.0, 0.0, 0.0));
        // p_x + p_y + p_z = p exactly
        for &(p, a) in &[(0.1, 3.0), (0.5, 0.5), (0.02, 100.0)] {
            let ch = pauli_from_total(p, a).unwrap();
            assert!((ch.p_x + ch.p_y + ch.p_z - p).abs() < 1e-15);
        }
    }

    #[test]
    fn crossovers() {
        let (ex, ez) = bsc_crossovers(0.03, 10.0).unwrap();
        assert!((ex - 0.005).abs() < 1e-15);
        assert!((ez - 0.0275).abs() < 1e-15);
        let (ex, ez) = bsc_crossovers(0.3, 1.0).unwrap();
        assert!((ex - 0.2).abs() < 1e-15);
        assert!((ez - 0.2).abs() < 1e-15);
        // eps_x + eps_z = p(A+3)/(A+2) >= p
        for &(p, a) in &[(0.1, 1.0), (0.2, 9.0), (0.05, 100.0)] {
            let (ex, ez) = bsc_crossovers(p, a).unwrap();
            assert!((ex + ez - p * (a + 3.0) / (a + 2.0)).abs() < 1e-15);
            assert!(ex + ez >= p);
        }
    }
}
