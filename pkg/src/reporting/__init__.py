"""Netlist writers and the benchmark workbook."""

from .bench_writer import bench_lines, write_bench, write_bench_json
from .excel_generator import ExcelReportGenerator

__all__ = ['bench_lines', 'write_bench', 'write_bench_json', 'ExcelReportGenerator']
