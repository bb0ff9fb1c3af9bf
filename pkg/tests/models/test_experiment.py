import unittest

from pydantic import ValidationError

from qsm_multipliers.models import Ellipsoid, GridSpec, PerturbationSpec, Spike
from qsm_multipliers.models.experiment import ExperimentConfig, MetricOptions, SliceOptions
from qsm_multipliers.models.slices import ImageFormat, Plane


class TestExperimentConfig(unittest.TestCase):
    def test_defaults(self):
        cfg = ExperimentConfig()
        self.assertEqual(cfg.grid.shape, (64, 64, 64))
        self.assertEqual([r.name for r in cfg.recon], ["tkd-smooth"])
        self.assertTrue(cfg.perturbation.is_empty)

    def test_duplicate_labels_rejected(self):
        with self.assertRaises(ValidationError):
            ExperimentConfig(recon=[{"method": "naive"}, {"method": "naive"}])

    def test_labels_disambiguate(self):
        cfg = ExperimentConfig(
            recon=[{"method": "r-reg"}, {"method": "r-reg", "label": "r-reg-s2", "params": {"s": 2}}]
        )
        self.assertEqual([r.name for r in cfg.recon], ["r-reg", "r-reg-s2"])

    def test_empty_recon_rejected(self):
        with self.assertRaises(ValidationError):
            ExperimentConfig(recon=[])

    def test_spike_out_of_range(self):
        with self.assertRaises(ValidationError):
            ExperimentConfig(
                grid=GridSpec.cubic(8),
                perturbation=PerturbationSpec(spikes=[Spike(index=(8, 0, 0))]),
            )

    def test_perturbation_seed_falls_back(self):
        cfg = ExperimentConfig(seed=11, perturbation={"noise_sigma": 0.1})
        self.assertEqual(cfg.effective_perturbation().seed, 11)
        cfg = ExperimentConfig(seed=11, perturbation={"noise_sigma": 0.1, "seed": 3})
        self.assertEqual(cfg.effective_perturbation().seed, 3)

    def test_cone_halfwidth_floor(self):
        with self.assertRaises(ValidationError):
            MetricOptions(cone_halfwidth=0.5)


class TestSliceOptions(unittest.TestCase):
    def test_enums_parsed(self):
        options = SliceOptions(plane="axial", format="png")
        self.assertIs(options.plane, Plane.axial)
        self.assertIs(options.format, ImageFormat.png)

    def test_unknown_plane(self):
        with self.assertRaises(ValidationError):
            SliceOptions(plane="oblique")

    def test_unknown_format(self):
        with self.assertRaises(ValidationError):
            SliceOptions(format="tiff")

    def test_inverted_window(self):
        with self.assertRaises(ValidationError):
            SliceOptions(chi_window=(1.0, -0.3))
        with self.assertRaises(ValidationError):
            SliceOptions(psi_window=(0.1, 0.1))

    def test_coordinate_checked_against_grid(self):
        ExperimentConfig(grid=GridSpec.cubic(8), slices={"plane": "axial", "coordinate": 7})
        with self.assertRaises(ValidationError):
            ExperimentConfig(grid=GridSpec.cubic(8), slices={"plane": "axial", "coordinate": 8})


class TestPhantomModels(unittest.TestCase):
    def test_non_positive_axis(self):
        with self.assertRaises(ValidationError):
            Ellipsoid(center=(0, 0, 0), semi_axes=(0.5, 0.0, 0.5), amplitude=1.0)

    def test_ellipsoid_outside_cube(self):
        with self.assertRaises(ValidationError):
            Ellipsoid(center=(2.0, 0, 0), semi_axes=(0.5, 0.5, 0.5), amplitude=1.0)

    def test_negative_noise(self):
        with self.assertRaises(ValidationError):
            PerturbationSpec(noise_sigma=-1.0)


if __name__ == "__main__":
    unittest.main()
