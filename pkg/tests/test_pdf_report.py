"""Tests for PDF report output."""

import os
import shutil
import tempfile
import unittest

from blockade.pdf_report import PDFWriteError, ReportPDFGenerator
from blockade.report import Report


class TestReportPDFGenerator(unittest.TestCase):

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()
        self.generator = ReportPDFGenerator()
        self.report = Report.build(["roots", "A", "2"], {}, {"fundamental_group_order": 3})

    def tearDown(self):
        if os.path.exists(self.temp_dir):
            shutil.rmtree(self.temp_dir)

    def test_generate_pdf(self):
        data = self.generator.generate_pdf(self.report)
        self.assertTrue(data.startswith(b"%PDF"))

    def test_write(self):
        path = os.path.join(self.temp_dir, "report.pdf")
        self.generator.write(self.report, path)
        with open(path, "rb") as f:
            self.assertTrue(f.read().startswith(b"%PDF"))

    def test_write_to_directory_fails(self):
        with self.assertRaises(PDFWriteError):
            self.generator.write(self.report, self.temp_dir)

    def test_pagination(self):
        n = self.generator.lines_per_page
        pages = self.generator.paginate([str(k) for k in range(n + 1)])
        self.assertEqual([len(p) for p in pages], [n, 1])
        self.assertEqual(self.generator.paginate([]), [[]])

    def test_long_report_spans_pages(self):
        results = {"matrix": [[k] for k in range(3 * self.generator.lines_per_page)]}
        data = self.generator.generate_pdf(Report.build(["ext"], {}, results))
        self.assertTrue(data.startswith(b"%PDF"))

    def test_non_latin_text_is_replaced(self):
        self.assertEqual(ReportPDFGenerator._make_pdf_safe("λ ≤ μ é"), "? ? ? é")
