import numpy as np
import pytest

from mcwave import linalg
from mcwave.errors import (
    InvalidDimensionError,
    InvalidParameterError,
    SingularMatrixError,
)
from mcwave.gfdm import (
    GfdmBlock,
    GfdmConfig,
    PulseSpec,
    gfdm_condition_number,
    gfdm_demodulate,
    gfdm_modulate,
    gfdm_modulation_matrix,
    make_pulse,
)

RC = "raised-cosine-time"


def rc_config(k, m, rolloff):
    return GfdmConfig(k, m, PulseSpec(RC, rolloff))


def random_block(cfg, seed):
    rng = np.random.default_rng(seed)
    d = rng.standard_normal((cfg.K, cfg.M)) + 1j * rng.standard_normal((cfg.K, cfg.M))
    return GfdmBlock(cfg, d)


def column_formula(cfg, pulse, k, m):
    n = np.arange(cfg.N)
    shifted = np.roll(pulse, m * cfg.K)
    return shifted * np.exp(2j * np.pi * k * n / cfg.K) / np.sqrt(cfg.K)


class TestPulse:
    def test_rect_samples(self):
        # rect pulse is 1 on the first subsymbol (||g|| = sqrt(K), so the
        # modulation matrix has unit-norm columns)
        g = make_pulse(GfdmConfig(4, 2, PulseSpec("rect-subsymbol")))
        assert np.abs(g - np.array([1, 1, 1, 1, 0, 0, 0, 0])).max() < 1e-14

    @pytest.mark.parametrize("spec", [
        PulseSpec("rect-subsymbol"),
        PulseSpec(RC, 0.0),
        PulseSpec(RC, 0.5),
        PulseSpec(RC, 1.0),
        PulseSpec("dirichlet"),
    ])
    def test_norm_is_sqrt_k(self, spec):
        cfg = GfdmConfig(8, 4, spec)
        assert abs(np.linalg.norm(make_pulse(cfg)) - np.sqrt(8)) < 1e-12

    def test_builtin_pulses_are_real(self):
        for spec in (PulseSpec(RC, 0.3), PulseSpec("rect-subsymbol"),
                     PulseSpec("dirichlet")):
            g = make_pulse(GfdmConfig(4, 3, spec))
            assert np.abs(g.imag).max() < 1e-14

    def test_custom_pulse_normalized(self):
        samples = np.arange(1, 7, dtype=float)
        g = make_pulse(GfdmConfig(3, 2, PulseSpec("custom", samples=samples)))
        assert abs(np.linalg.norm(g) - np.sqrt(3)) < 1e-12

    @pytest.mark.parametrize("rolloff", [-0.1, 1.5])
    def test_invalid_rolloff(self, rolloff):
        with pytest.raises(InvalidParameterError):
            PulseSpec(RC, rolloff)

    def test_custom_wrong_length(self):
        cfg = GfdmConfig(3, 2, PulseSpec("custom", samples=np.ones(5)))
        with pytest.raises(InvalidDimensionError):
            make_pulse(cfg)

    def test_rc_spectral_localization(self):
        # FFT-oracle baseline: the 2M bins around DC hold 99.993% of the
        # energy for K=8, M=4, rolloff 0.5
        cfg = rc_config(8, 4, 0.5)
        g = make_pulse(cfg)
        spectrum = np.abs(np.fft.fft(g)) ** 2
        idx = np.arange(-cfg.M, cfg.M) % cfg.N
        fraction = spectrum[idx].sum() / spectrum.sum()
        assert fraction >= 0.999


class TestModulationMatrix:
    def test_m1_rect_is_ofdm(self):
        cfg = GfdmConfig(4, 1, PulseSpec("rect-subsymbol"))
        a = gfdm_modulation_matrix(cfg)
        assert np.abs(a - linalg.dft_matrix(4).conj().T).max() < 1e-12

    def test_k1_columns_are_shifts(self):
        samples = np.array([3.0, 1.0, 2.0, 5.0])
        cfg = GfdmConfig(1, 4, PulseSpec("custom", samples=samples))
        g = make_pulse(cfg)
        a = gfdm_modulation_matrix(cfg)
        for m in range(4):
            assert np.abs(a[:, m] - np.roll(g, m)).max() < 1e-12

    def test_block_form_matches_column_formula(self):
        # two independent constructions: diag(shift(g, mK)) R_M F_K^H vs the
        # per-column closed form
        rng = np.random.default_rng(8)
        samples = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        cfg = GfdmConfig(2, 2, PulseSpec("custom", samples=samples))
        g = make_pulse(cfg)
        f_h = linalg.dft_matrix(cfg.K).conj().T
        a_block = np.zeros((cfg.N, cfg.N), dtype=complex)
        for m in range(cfg.M):
            block = np.diag(np.roll(g, m * cfg.K)) @ np.tile(f_h, (cfg.M, 1))
            a_block[:, m * cfg.K:(m + 1) * cfg.K] = block
        assert np.abs(a_block - gfdm_modulation_matrix(cfg)).max() < 1e-12

    def test_columns_match_closed_form(self):
        cfg = rc_config(5, 3, 0.4)
        g = make_pulse(cfg)
        a = gfdm_modulation_matrix(cfg)
        for m in range(cfg.M):
            for k in range(cfg.K):
                col = column_formula(cfg, g, k, m)
                assert np.abs(a[:, m * cfg.K + k] - col).max() < 1e-12

    def test_unit_norm_columns(self):
        a = gfdm_modulation_matrix(rc_config(8, 5, 0.3))
        norms = np.linalg.norm(a, axis=0)
        assert np.abs(norms - 1.0).max() < 1e-12


class TestModulate:
    def test_single_symbol_matches_column(self):
        cfg = rc_config(4, 3, 0.5)
        g = make_pulse(cfg)
        for (k, m) in [(0, 0), (2, 1), (3, 2)]:
            d = np.zeros((cfg.K, cfg.M), dtype=complex)
            d[k, m] = 1.0
            x = gfdm_modulate(GfdmBlock(cfg, d))
            assert np.abs(x - column_formula(cfg, g, k, m)).max() < 1e-12

    def test_m1_rect_is_ifft(self):
        cfg = GfdmConfig(8, 1, PulseSpec("rect-subsymbol"))
        rng = np.random.default_rng(12)
        d = rng.standard_normal((8, 1)) + 1j * rng.standard_normal((8, 1))
        x = gfdm_modulate(GfdmBlock(cfg, d))
        assert np.abs(x - linalg.ifft(d[:, 0])).max() < 1e-10

    def test_fast_matches_dense(self):
        cfg = rc_config(8, 5, 0.3)
        block = random_block(cfg, 13)
        dense = gfdm_modulation_matrix(cfg) @ linalg.vec(block.data)
        assert np.abs(gfdm_modulate(block) - dense).max() < 1e-10

    def test_linearity(self):
        cfg = rc_config(4, 3, 0.2)
        b1 = random_block(cfg, 14)
        b2 = random_block(cfg, 15)
        alpha, beta = 0.7 - 0.2j, -1.1 + 0.4j
        combined = GfdmBlock(cfg, alpha * b1.data + beta * b2.data)
        lhs = gfdm_modulate(combined)
        rhs = alpha * gfdm_modulate(b1) + beta * gfdm_modulate(b2)
        assert np.abs(lhs - rhs).max() < 1e-10

    def test_subsymbol_spectrum_magnitude_invariant(self):
        # time shift between subsymbols changes spectral phase only
        cfg = rc_config(6, 4, 0.5)
        rng = np.random.default_rng(16)
        col = rng.standard_normal(cfg.K) + 1j * rng.standard_normal(cfg.K)
        mags = []
        for m in range(cfg.M):
            d = np.zeros((cfg.K, cfg.M), dtype=complex)
            d[:, m] = col
            mags.append(np.abs(np.fft.fft(gfdm_modulate(GfdmBlock(cfg, d)))))
        for mag in mags[1:]:
            assert np.abs(mag - mags[0]).max() < 1e-10

    def test_ofdm_degenerate_point_matches_vofdm(self):
        from mcwave.vofdm import VofdmConfig, VofdmFrame, vofdm_modulate
        rng = np.random.default_rng(17)
        k = 8
        d = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        x_g = gfdm_modulate(
            GfdmBlock(GfdmConfig(k, 1, PulseSpec("rect-subsymbol")),
                      d.reshape(-1, 1)))
        x_v = vofdm_modulate(VofdmFrame(VofdmConfig(M=1, L=k), d))
        assert np.abs(x_g - x_v).max() < 1e-10


class TestDemodulate:
    def test_zf_round_trip(self):
        cfg = rc_config(8, 5, 0.3)
        block = random_block(cfg, 18)
        recovered = gfdm_demodulate(gfdm_modulate(block), cfg, mode="zf")
        assert np.abs(recovered.data - block.data).max() < 1e-8

    def test_mf_exact_in_ofdm_reduction(self):
        cfg = GfdmConfig(8, 1, PulseSpec("rect-subsymbol"))
        block = random_block(cfg, 19)
        recovered = gfdm_demodulate(gfdm_modulate(block), cfg, mode="mf")
        assert np.abs(recovered.data - block.data).max() < 1e-10

    def test_mf_peaks_at_transmitted_symbol(self):
        cfg = rc_config(4, 3, 0.5)
        for k in range(cfg.K):
            for m in range(cfg.M):
                d = np.zeros((cfg.K, cfg.M), dtype=complex)
                d[k, m] = 1.0
                est = gfdm_demodulate(
                    gfdm_modulate(GfdmBlock(cfg, d)), cfg, mode="mf")
                peak = np.unravel_index(np.argmax(np.abs(est.data)),
                                        est.data.shape)
                assert peak == (k, m)

    def test_zf_singular_raises(self):
        # circular shift by K has period 2 for this pulse, so two subsymbol
        # column groups coincide
        cfg = GfdmConfig(2, 2, PulseSpec("custom",
                                         samples=np.array([1.0, 0.0, 1.0, 0.0])))
        with pytest.raises(SingularMatrixError):
            gfdm_demodulate(np.ones(4, dtype=complex), cfg, mode="zf")

    def test_unknown_mode(self):
        with pytest.raises(InvalidParameterError):
            gfdm_demodulate(np.ones(4, dtype=complex),
                            GfdmConfig(2, 2), mode="mmse")

    def test_length_mismatch(self):
        with pytest.raises(InvalidDimensionError):
            gfdm_demodulate(np.ones(5, dtype=complex), GfdmConfig(2, 2))


class TestConditionNumber:
    def test_ofdm_reduction_is_unitary(self):
        cfg = GfdmConfig(8, 1, PulseSpec("rect-subsymbol"))
        assert abs(gfdm_condition_number(cfg) - 1.0) < 1e-8

    def test_even_m_symmetric_rc_is_singular(self):
        # regression baseline: a zero-phase real RC prototype with even M
        # yields an exactly singular modulation matrix
        assert np.isinf(gfdm_condition_number(rc_config(4, 4, 0.25)))

    def test_odd_m_rc_baseline(self):
        # regression baseline computed with the SVD oracle
        value = gfdm_condition_number(rc_config(8, 5, 0.3))
        assert value == pytest.approx(1.411591655542966, rel=1e-9)

    def test_k1_zero_spectrum_bin_is_singular(self):
        # circulant of g is singular iff FFT(g) has a zero bin
        samples = np.array([1.0, -1.0, 1.0, -1.0, 1.0, -1.0]) + 1.0
        cfg = GfdmConfig(1, 6, PulseSpec("custom", samples=samples))
        g = make_pulse(cfg)
        assert np.abs(np.fft.fft(g)).min() < 1e-12
        assert np.isinf(gfdm_condition_number(cfg))


def test_fast_dense_equivalence_sweep():
    rng = np.random.default_rng(99)
    pulses = [PulseSpec(RC, 0.1), PulseSpec(RC, 0.5), PulseSpec(RC, 0.9),
              PulseSpec("rect-subsymbol"), PulseSpec("dirichlet")]
    for i in range(100):
        cfg = GfdmConfig(int(rng.integers(1, 17)), int(rng.integers(1, 9)),
                         pulses[i % len(pulses)])
        block = GfdmBlock(cfg, rng.standard_normal((cfg.K, cfg.M))
                          + 1j * rng.standard_normal((cfg.K, cfg.M)))
        dense = gfdm_modulation_matrix(cfg) @ linalg.vec(block.data)
        assert np.abs(gfdm_modulate(block) - dense).max() < 1e-10
