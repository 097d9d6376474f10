"""
Excel workbook for benchmark runs.

One styled comparison sheet (B1 vs F per circuit, Avg row, improvement
percentages) with a PND bar chart, plus an optional per-phase sheet.
"""

from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

import pandas as pd
from openpyxl import Workbook
from openpyxl.chart import BarChart, Reference
from openpyxl.styles import Alignment, Border, Font, PatternFill, Side
from openpyxl.utils.dataframe import dataframe_to_rows
from openpyxl.worksheet.worksheet import Worksheet

from ..utils.logger import setup_logger

logger = setup_logger(__name__)

THIN = Side(style='thin')


class ExcelReportGenerator:
    """
    Write benchmark comparison tables to ``.xlsx``.

    Example:
        >>> generator = ExcelReportGenerator()
        >>> generator.generate(table, 'data/output/benchmarks.xlsx')
    """

    def __init__(self):
        self.colors = {
            'header': 'FF4472C4',
            'average': 'FFD9E1F2',
            'positive': 'FFC6EFCE',
            'negative': 'FFFFC7CE',
        }

    def generate(
        self,
        comparison: pd.DataFrame,
        output_path: str,
        phases: Optional[pd.DataFrame] = None,
        config: Optional[Dict[str, Any]] = None,
    ) -> str:
        """
        Generate the workbook.

        Args:
            comparison: Table from ``BenchmarkComparison.to_dataframe``
            output_path: Path of the ``.xlsx`` file
            phases: Optional long-format per-phase metrics
            config: ``title`` and ``include_charts`` (default True)

        Returns:
            Path to the generated file
        """
        config = config or {}
        logger.info(f"Generating benchmark workbook: {output_path}")
        Path(output_path).parent.mkdir(parents=True, exist_ok=True)

        wb = Workbook()
        ws = wb.active
        ws.title = 'Comparison'
        ws['A1'] = config.get('title', 'FluxMap benchmark comparison')
        ws['A1'].font = Font(size=14, bold=True)
        ws['A2'] = f"Generated: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}"
        ws['A2'].font = Font(italic=True)

        first_row = 4
        self._write_table(ws, comparison.reset_index(), first_row)
        ws.freeze_panes = ws.cell(row=first_row + 1, column=2)

        if config.get('include_charts', True) and not comparison.empty:
            try:
                self._add_pnd_chart(ws, comparison, first_row)
            except (KeyError, ValueError) as e:
                logger.warning(f"Failed to add PND chart: {str(e)}")

        if phases is not None and not phases.empty:
            self._write_table(wb.create_sheet('Phases'), phases, 1)

        wb.save(output_path)
        logger.info(f"Benchmark workbook written: {output_path}")
        return output_path

    def _write_table(self, ws: Worksheet, df: pd.DataFrame, first_row: int) -> None:
        header_fill = PatternFill(start_color=self.colors['header'],
                                  end_color=self.colors['header'], fill_type='solid')
        for r_offset, row in enumerate(dataframe_to_rows(df, index=False, header=True)):
            r_idx = first_row + r_offset
            is_average = r_offset > 0 and row[0] == 'Avg'
            for c_idx, value in enumerate(row, 1):
                if isinstance(value, float) and pd.isna(value):
                    value = None
                cell = ws.cell(row=r_idx, column=c_idx, value=value)
                cell.border = Border(left=THIN, right=THIN, top=THIN, bottom=THIN)

                if r_offset == 0:
                    cell.font = Font(bold=True, color='FFFFFF')
                    cell.fill = header_fill
                    cell.alignment = Alignment(horizontal='center', wrap_text=True)
                    continue

                if is_average:
                    cell.font = Font(bold=True)
                    cell.fill = PatternFill(start_color=self.colors['average'],
                                            end_color=self.colors['average'], fill_type='solid')
                column = str(df.columns[c_idx - 1])
                if isinstance(value, (int, float)):
                    cell.number_format = '0.00' if column.endswith('%') or is_average else '#,##0'
                    if column.endswith('impr %') and value != 0:
                        color = self.colors['positive'] if value > 0 else self.colors['negative']
                        cell.fill = PatternFill(start_color=color, end_color=color,
                                                fill_type='solid')

        for column in ws.iter_cols(min_row=first_row):
            width = max((len(str(cell.value)) for cell in column if cell.value is not None),
                        default=8)
            ws.column_dimensions[column[0].column_letter].width = min(width + 2, 40)

    def _add_pnd_chart(self, ws: Worksheet, comparison: pd.DataFrame, first_row: int) -> None:
        """Clustered bars of B1 PND and F PND per circuit."""
        circuits = [name for name in comparison.index if name != 'Avg']
        if not circuits:
            return
        columns = ['circuit'] + list(comparison.columns)
        last_row = first_row + len(circuits)

        chart = BarChart()
        chart.type = 'col'
        chart.title = 'PND per circuit'
        chart.y_axis.title = 'PND'
        chart.x_axis.title = 'Circuit'
        for label in ('B1 PND', 'F PND'):
            col_idx = columns.index(label) + 1
            chart.add_data(Reference(ws, min_col=col_idx, min_row=first_row, max_row=last_row),
                           titles_from_data=True)
        chart.set_categories(Reference(ws, min_col=1, min_row=first_row + 1, max_row=last_row))
        chart.width = max(15, 2 * len(circuits))

        ws.add_chart(chart, f"A{last_row + 4}")
        logger.info("Added PND chart to benchmark workbook")
