import json
import unittest

import numpy as np

from cli.reports import FAIL, NOT_APPLICABLE, PASS, Report, digest, render, status_of


class TestReports(unittest.TestCase):

    def test_boolean_status(self):
        report = Report(command="check")
        report.add("first", True, value=np.float64(1.5))
        report.add("second", np.bool_(False), triple=(0, 1, 2))
        self.assertEqual([check.status for check in report.checks], [PASS, FAIL])
        self.assertEqual(report.checks[0].witness["value"], 1.5)
        self.assertEqual(report.checks[1].witness["triple"], [0, 1, 2])
        self.assertEqual(report.exit_code, 1)

    def test_not_applicable_does_not_fail(self):
        report = Report(command="foliation")
        report.add("theorem", NOT_APPLICABLE)
        self.assertEqual(report.exit_code, 0)

    def test_json_layout(self):
        report = Report(command="check", arguments={"tol": 1e-9}, input_digest=digest("text"))
        report.add("jacobi", True, matrix=np.eye(2))
        payload = json.loads(report.to_json())
        self.assertEqual(payload["schema"], 1)
        self.assertNotIn("timings", payload)
        self.assertEqual(payload["checks"][0]["witness"]["matrix"], [[1.0, 0.0], [0.0, 1.0]])
        self.assertEqual(len(payload["input_digest"]), 64)

        report.timings = {"total": 0.5}
        self.assertEqual(json.loads(report.to_json())["timings"], {"total": 0.5})

    def test_status_of(self):
        self.assertEqual(status_of("verified"), PASS)
        self.assertEqual(status_of("contradiction"), FAIL)
        self.assertEqual(status_of("premises-fail"), NOT_APPLICABLE)
        self.assertEqual(status_of("not-applicable"), NOT_APPLICABLE)

    def test_text_rendering(self):
        report = Report(command="check")
        report.add("killing form", True, semisimple=True)
        report.notes.append("metric omitted; identity assumed")
        text = render(report, "text")
        self.assertIn("killing form", text)
        self.assertIn("metric omitted", text)
        self.assertEqual(render(report, "json"), report.to_json())


if __name__ == '__main__':
    unittest.main()
