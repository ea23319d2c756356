"""Result-table report writers."""

from qcaveat.reports.writer import ReportWriter, render_table, write_table

__all__ = ["ReportWriter", "render_table", "write_table"]
