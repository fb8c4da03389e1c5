"""Unit tests for settings, shipped defaults and configuration layering."""

import os
from pathlib import Path
from unittest.mock import patch

import pytest

from certiq.base import CommandContext
from certiq.config import ConfigLoader, Settings, get_config_loader, load_user_config, merge_sections
from certiq.constants import PBoundMode, RegularizerKind
from certiq.exceptions import ConfigurationError, InvalidConfigurationError, MissingConfigurationError
from certiq.models.training import SnesConfig


class TestSettings:
    """Test environment-driven process settings."""

    def test_default_configuration(self):
        """Test that default values are set correctly."""
        with patch.dict(os.environ, {}, clear=True):
            settings = Settings()

            assert settings.threads == 1
            assert settings.log_level == "INFO"
            assert settings.max_qubits == 14
            assert settings.output_dir == Path("./runs")
            assert settings.simulation_batch == 4096

    def test_load_from_environment_variables(self):
        """Test loading configuration from CERTIQ_* variables."""
        env_vars = {
            "CERTIQ_THREADS": "4",
            "CERTIQ_LOG_LEVEL": "debug",
            "CERTIQ_OUTPUT_DIR": "/tmp/certiq-runs",
        }

        with patch.dict(os.environ, env_vars, clear=True):
            settings = Settings()

            assert settings.threads == 4
            assert settings.log_level == "DEBUG"
            assert settings.output_dir == Path("/tmp/certiq-runs")

    def test_invalid_log_level(self):
        """Test that invalid log levels raise configuration errors."""
        with patch.dict(os.environ, {"CERTIQ_LOG_LEVEL": "LOUD"}, clear=True):
            with pytest.raises(InvalidConfigurationError) as exc_info:
                Settings()

            assert "log_level" in str(exc_info.value)

    def test_zero_threads_rejected(self):
        """Test that worker counts must be positive."""
        with patch.dict(os.environ, {"CERTIQ_THREADS": "0"}, clear=True):
            with pytest.raises(InvalidConfigurationError):
                Settings()

    def test_max_qubits_guard_has_a_floor(self):
        """Test that the memory guard cannot drop below the smallest chain."""
        with patch.dict(os.environ, {"CERTIQ_MAX_QUBITS": "2"}, clear=True):
            with pytest.raises(InvalidConfigurationError):
                Settings()


class TestConfigLoader:
    """Test the shipped YAML/JSON defaults."""

    def test_shipped_files_are_listed(self):
        """Test that every shipped document is discoverable."""
        files = get_config_loader().get_all_files()

        for name in ("snes.yaml", "certification.yaml", "noise_sweep.yaml",
                     "hp_search_space.yaml", "phase_boundaries.json"):
            assert name in files

    def test_snes_defaults(self):
        """Test the sNES defaults match the acceptable-range midpoints."""
        snes = get_config_loader().load_snes()

        assert snes["population"] == 24
        assert snes["eta_theta"] == pytest.approx(0.1)
        assert snes["eta_sigma"] == pytest.approx(0.01)
        assert snes["sigma0"] == pytest.approx(0.1)
        assert snes["iterations"] == 1500
        assert snes["reg_kind"] == "L2"

    def test_shipped_snes_file_matches_model_defaults(self):
        """Test that snes.yaml and the SnesConfig field defaults agree."""
        shipped = SnesConfig.model_validate(get_config_loader().load_snes())

        assert shipped == SnesConfig()

    def test_missing_directory_raises(self, tmp_path):
        """Test that a missing data directory is reported."""
        with pytest.raises(ConfigurationError):
            ConfigLoader(tmp_path / "absent")

    def test_missing_file_raises(self, tmp_path):
        """Test that asking for an unknown document raises."""
        (tmp_path / "present.yaml").write_text("a: 1\n")
        loader = ConfigLoader(tmp_path)
        with pytest.raises(MissingConfigurationError) as exc_info:
            loader.load_file("nothing")

        assert "nothing.yaml" in str(exc_info.value)
        assert exc_info.value.details["config_key"] == "nothing.yaml"
        assert exc_info.value.details["available"] == ["present.yaml"]

    def test_missing_shipped_document_raises(self, tmp_path):
        """Test that a data directory without the sNES defaults cannot supply them."""
        with pytest.raises(MissingConfigurationError):
            ConfigLoader(tmp_path).load_snes()

    def test_malformed_yaml_raises(self, tmp_path):
        """Test that unparsable YAML is a configuration error."""
        (tmp_path / "broken.yaml").write_text("a: [1, 2\n")
        with pytest.raises(ConfigurationError):
            ConfigLoader(tmp_path).load_file("broken")

    def test_non_mapping_document_raises(self, tmp_path):
        """Test that a list document is rejected."""
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigurationError):
            load_user_config(path)

    def test_user_config_missing(self, tmp_path):
        """Test that a missing --config file is reported with its path."""
        with pytest.raises(MissingConfigurationError) as exc_info:
            load_user_config(tmp_path / "nope.yaml")

        assert "searched_path" in exc_info.value.details


class TestLayering:
    """Test shipped defaults < config file < flags."""

    def test_merge_sections_skips_none(self):
        """Test that None values never override earlier layers."""
        merged = merge_sections({"a": 1, "b": 2}, None, {"b": None, "c": 3}, {"a": 5})

        assert merged == {"a": 5, "b": 2, "c": 3}

    def test_config_file_overrides_defaults(self, tmp_path):
        """Test that the training section of --config beats shipped values."""
        context = CommandContext(
            seed=3, out_dir=tmp_path,
            user_config={"training": {"population": 10, "reg_kind": "AREA"}},
        )
        config = context.snes_config()

        assert config.population == 10
        assert config.reg_kind == RegularizerKind.AREA
        assert config.eta_theta == pytest.approx(0.1)
        assert config.seed == 3

    def test_flags_override_config_file(self, tmp_path):
        """Test that explicit flag values beat the config file."""
        context = CommandContext(
            out_dir=tmp_path, user_config={"training": {"population": 10}},
        )
        config = context.snes_config({"population": 12, "eta_r": None})

        assert config.population == 12
        assert config.eta_r == pytest.approx(1e-4)

    def test_certification_settings_layering(self, tmp_path):
        """Test certification defaults and overrides."""
        context = CommandContext(out_dir=tmp_path, user_config={"certification": {"n": 500}})
        settings = context.certification_settings({"pb_mode": "bonferroni"})

        assert settings.n0 == 100
        assert settings.n == 500
        assert settings.alpha == pytest.approx(0.01)
        assert settings.pb_mode == PBoundMode.BONFERRONI

    def test_invalid_override_names_the_key(self, tmp_path):
        """Test that a rejected value is reported under its section."""
        context = CommandContext(out_dir=tmp_path)
        with pytest.raises(InvalidConfigurationError) as exc_info:
            context.certification_settings({"alpha": 1.5})

        assert "certification.alpha" in str(exc_info.value)

    def test_non_mapping_section_raises(self, tmp_path):
        """Test that config sections must be mappings."""
        context = CommandContext(out_dir=tmp_path, user_config={"training": [1, 2]})
        with pytest.raises(InvalidConfigurationError):
            context.snes_config()

    def test_qcnn_spec_keeps_dataset_width(self, tmp_path):
        """Test that the register size always comes from the dataset."""
        context = CommandContext(out_dir=tmp_path, user_config={"qcnn": {"n_qubits": 16, "conv_reps": 2}})
        spec = context.qcnn_spec(4)

        assert spec.n_qubits == 4
        assert spec.conv_reps == 2
