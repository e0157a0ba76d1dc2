import os
import tempfile
import unittest
from unittest.mock import patch

from utils.config import SamplingConfig, load_sampling_config, load_settings


class TestSettings(unittest.TestCase):

    @patch('utils.config.load_dotenv')
    def test_environment_overrides(self, mock_load_dotenv):
        with patch.dict(os.environ, {"LEAFSPACE_TOL": "1e-7", "LEAFSPACE_SAMPLES": "12", "LEAFSPACE_SEED": "4"}):
            settings = load_settings()
        mock_load_dotenv.assert_called_once()
        self.assertEqual(settings.tol, 1e-7)
        self.assertEqual(settings.samples, 12)
        self.assertEqual(settings.seed, 4)

    @patch('utils.config.load_dotenv')
    def test_invalid_values_fall_back(self, mock_load_dotenv):
        with patch.dict(os.environ, {"LEAFSPACE_TOL": "-1"}):
            with self.assertLogs('root', level='ERROR') as log:
                settings = load_settings()
        self.assertEqual(settings.tol, 1e-9)
        self.assertIn("Invalid LEAFSPACE settings", log.output[0])

    @patch('utils.config.load_dotenv')
    def test_invalid_worker_count_falls_back(self, mock_load_dotenv):
        with patch.dict(os.environ, {"LEAFSPACE_WORKERS": "abc"}):
            with self.assertLogs('root', level='ERROR'):
                settings = load_settings()
        self.assertEqual(settings.workers, 4)


class TestSamplingConfig(unittest.TestCase):

    def test_bundled_file(self):
        config = load_sampling_config()
        self.assertEqual(config.berger_ranges["lambda"], [0.2, 5.0])
        self.assertEqual(config.unit_lambda_every, 10)
        self.assertEqual(config.reframings, 50)
        self.assertEqual(config.frame_rotations, 20)

    def test_missing_file(self):
        with self.assertLogs('root', level='WARNING') as log:
            config = load_sampling_config("/nonexistent/sampling.json")
        self.assertEqual(config, SamplingConfig())
        self.assertIn("not found", log.output[0])

    def test_malformed_file(self):
        with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as file:
            file.write("{not json")
        try:
            with self.assertLogs('root', level='ERROR') as log:
                config = load_sampling_config(file.name)
        finally:
            os.remove(file.name)
        self.assertEqual(config.reframings, 50)
        self.assertIn("Malformed sampling configuration", log.output[0])


if __name__ == '__main__':
    unittest.main()
