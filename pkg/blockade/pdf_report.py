"""Render a report as a letter-size PDF in Courier."""

from __future__ import annotations

import io
import logging
from pathlib import Path
from typing import List, Union

from reportlab.lib.pagesizes import letter
from reportlab.pdfgen import canvas

from .errors import BlockadeError
from .report import Report, report_lines

logger = logging.getLogger(__name__)


class PDFWriteError(BlockadeError):
    """Raised when the PDF cannot be written."""


class ReportPDFGenerator:
    """Lay report text out on US Letter pages, one fixed-pitch line per row."""

    def __init__(self, font_name: str = "Courier", font_size: int = 10):
        self.page_width, self.page_height = letter
        self.font_name = font_name
        self.font_name_bold = f"{font_name}-Bold"
        self.font_size = font_size
        self.line_height = font_size + 2
        self.left_margin = 54
        self.top_margin = 54
        self.bottom_margin = 54

    @property
    def lines_per_page(self) -> int:
        return int((self.page_height - self.top_margin - self.bottom_margin) // self.line_height)

    def paginate(self, lines: List[str]) -> List[List[str]]:
        n = self.lines_per_page
        return [lines[k:k + n] for k in range(0, len(lines), n)] or [[]]

    def generate_pdf(self, report: Report) -> bytes:
        lines = [self._make_pdf_safe(line) for line in report_lines(report)]
        buffer = io.BytesIO()
        c = canvas.Canvas(buffer, pagesize=letter)
        c.setTitle(f"blockade {' '.join(report.command)}")
        for page_num, page in enumerate(self.paginate(lines)):
            y = self.page_height - self.top_margin
            for li, line in enumerate(page):
                heading = page_num == 0 and li == 0
                c.setFont(self.font_name_bold if heading else self.font_name, self.font_size)
                c.drawString(self.left_margin, y, line)
                y -= self.line_height
            c.showPage()
        c.save()
        return buffer.getvalue()

    def write(self, report: Report, path: Union[str, Path]) -> None:
        data = self.generate_pdf(report)
        try:
            Path(path).write_bytes(data)
        except OSError as e:
            raise PDFWriteError(f"Cannot write PDF: {e.strerror or e}", path=str(path)) from e
        logger.info(f"Wrote {len(data)} bytes of PDF to {path}")

    @staticmethod
    def _make_pdf_safe(text: str) -> str:
        # built-in Courier covers cp1252 only
        return "".join(ch if _encodable(ch) else "?" for ch in text)


def _encodable(ch: str) -> bool:
    try:
        ch.encode("cp1252")
        return True
    except UnicodeEncodeError:
        return False
