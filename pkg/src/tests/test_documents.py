import json
import os
import tempfile
import unittest

import numpy as np

from cli.documents import DocumentError, emit_document, load_document, parse_document, to_algebra, to_metric, to_theta
from geometry.catalog import BERGER_DEFAULTS, berger_algebra, berger_params
from geometry.errors import InputError

HEISENBERG = {
    "dimension": 3,
    "basis_names": ["x", "y", "z"],
    "brackets": [{"i": 0, "j": 1, "k": 2, "value": 1.0}],
}


class TestDocuments(unittest.TestCase):

    def test_parse_valid_document(self):
        document = parse_document(json.dumps(HEISENBERG))
        algebra = to_algebra(document)
        self.assertEqual(algebra.basis_names, ("x", "y", "z"))
        self.assertEqual(algebra.constants[1, 0, 2], -1.0)
        self.assertTrue(document.metric_defaulted)
        np.testing.assert_array_equal(to_metric(document).matrix, np.eye(3))
        self.assertIsNone(to_theta(document))

    def test_unordered_bracket(self):
        payload = dict(HEISENBERG, brackets=[{"i": 1, "j": 0, "k": 2, "value": 1.0}])
        with self.assertRaises(DocumentError) as context:
            parse_document(json.dumps(payload))
        self.assertIn("bracket indices must satisfy i < j", str(context.exception))
        self.assertIsInstance(context.exception, InputError)

    def test_malformed_json_reports_position(self):
        with self.assertRaises(DocumentError) as context:
            parse_document('{\n  "dimension": 3,\n  "brackets": [\n}')
        self.assertIn("line 4", str(context.exception))

    def test_schema_violations(self):
        cases = [
            dict(HEISENBERG, brackets=[{"i": 0, "j": 1, "k": 5, "value": 1.0}]),
            dict(HEISENBERG, metric=[[1.0, 2.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]),
            dict(HEISENBERG, metric=[[1.0, 0.0], [0.0, 1.0]]),
            dict(HEISENBERG, vertical=[0, 0]),
            dict(HEISENBERG, basis_names=["x"]),
            dict(HEISENBERG, dimension=0),
            dict(HEISENBERG, extra=1),
        ]
        for payload in cases:
            with self.assertRaises(DocumentError, msg=str(payload)):
                parse_document(json.dumps(payload))

    def test_theta_shape_follows_vertical(self):
        payload = dict(HEISENBERG, dimension=3, vertical=[0], theta=[[1.0]])
        document = parse_document(json.dumps(payload))
        self.assertEqual(to_theta(document).matrix.shape, (1, 1))
        with self.assertRaises(DocumentError):
            parse_document(json.dumps(dict(payload, theta=[[1.0, 0.0], [0.0, 1.0]])))

    def test_emitted_berger_document_loads_back(self):
        algebra, metric, vertical = berger_algebra(berger_params(**BERGER_DEFAULTS))
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "berger.json")
            with open(path, "w") as file:
                file.write(emit_document(algebra, metric, vertical))
            document = load_document(path)
        self.assertEqual(document.vertical, [0, 1, 2])
        self.assertFalse(document.metric_defaulted)
        np.testing.assert_array_equal(to_algebra(document).constants, algebra.constants)

    def test_missing_file(self):
        with self.assertLogs('root', level='ERROR'):
            with self.assertRaises(DocumentError):
                load_document("/nonexistent/algebra.json")


if __name__ == '__main__':
    unittest.main()
