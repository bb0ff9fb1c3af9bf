import unittest

import numpy as np
from pydantic import ValidationError

from qsm_multipliers.models import CutoffProfile, GridSpec, ReconConfig, ReconMethod, SymbolParams
from qsm_multipliers.models.constants import DEFAULT_HBAR


class TestReconConfig(unittest.TestCase):
    def test_defaults(self):
        cfg = ReconConfig(method="tkd-smooth")
        self.assertEqual(cfg.method, ReconMethod.tkd_smooth)
        self.assertEqual(cfg.name, "tkd-smooth")
        self.assertEqual(cfg.params.hbar, DEFAULT_HBAR)
        self.assertAlmostEqual(cfg.effective_guard, 0.5 * DEFAULT_HBAR)

    def test_label_overrides_name(self):
        cfg = ReconConfig(method="r-reg", label="r-reg-s2", params=SymbolParams(s=2))
        self.assertEqual(cfg.name, "r-reg-s2")

    def test_unknown_method(self):
        with self.assertRaises(ValidationError):
            ReconConfig(method="wiener")

    def test_odd_m_rejected_for_t_methods(self):
        for method in ("t-enhanced", "t-sharp"):
            with self.assertRaises(ValidationError):
                ReconConfig(method=method, params=SymbolParams(m=3))

    def test_odd_m_ignored_elsewhere(self):
        cfg = ReconConfig(method="r-reg", params=SymbolParams(m=3))
        self.assertEqual(cfg.params.m, 3)

    def test_t_sharp_needs_m_two(self):
        with self.assertRaises(ValidationError):
            ReconConfig(method="t-sharp", params=SymbolParams(m=0))

    def test_r_reg_needs_s_two(self):
        with self.assertRaises(ValidationError):
            ReconConfig(method="r-reg", params=SymbolParams(s=1.5))

    def test_big_m_must_exceed_plateau(self):
        with self.assertRaises(ValidationError):
            ReconConfig(method="r-reg", params=SymbolParams(bigM=1.0), cutoff=CutoffProfile(inner=1.0))

    def test_cutoff_order(self):
        with self.assertRaises(ValidationError):
            CutoffProfile(inner=2.0, outer=1.5)

    def test_resolved_for_fills_grid_defaults(self):
        grid = GridSpec.cubic(16)
        cfg = ReconConfig(method="t-enhanced").resolved_for(grid)
        self.assertAlmostEqual(cfg.params.eps_c, 0.05 * grid.max_frequency)
        self.assertAlmostEqual(cfg.eps_guard, cfg.params.eps_c)
        self.assertAlmostEqual(cfg.halfline.ramp, 2 * np.pi / 16)

    def test_resolved_for_keeps_explicit_values(self):
        grid = GridSpec.cubic(16)
        cfg = ReconConfig(method="t-enhanced", params=SymbolParams(eps_c=0.3), eps_guard=0.1)
        resolved = cfg.resolved_for(grid)
        self.assertEqual(resolved.params.eps_c, 0.3)
        self.assertEqual(resolved.eps_guard, 0.1)

    def test_echo_is_flat(self):
        echo = ReconConfig(method="naive").echo()
        self.assertEqual(echo["method"], "naive")
        self.assertTrue(np.isnan(echo["eps_c"]))


if __name__ == "__main__":
    unittest.main()
