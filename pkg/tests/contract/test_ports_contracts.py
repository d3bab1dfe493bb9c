"""
Contract tests for ports and their adapters.
"""

from src.adapters.job_reader_fs import FileSystemJobReader
from src.adapters.report_exporter_csv import CsvExporter
from src.adapters.report_exporter_excel import ExcelExporter
from src.adapters.report_exporter_factory import ReportExporterFactory
from src.adapters.report_exporter_txt import TxtExporter
from src.domain.enums import OutputFormat
from src.ports.job_reader_port import JobReaderPort
from src.ports.report_exporter_port import ReportExporterPort


def test_job_reader_implements_port():
    assert issubclass(FileSystemJobReader, JobReaderPort)


def test_exporters_implement_port():
    for adapter_cls in (CsvExporter, TxtExporter, ExcelExporter):
        assert issubclass(adapter_cls, ReportExporterPort)


def test_factory_covers_every_output_format():
    for output_format in OutputFormat:
        assert isinstance(ReportExporterFactory.create(output_format), ReportExporterPort)
