"""Table file ingestion."""

from src.data.tables import TableParseError, dump_table, load_table, parse_table_file

__all__ = ["TableParseError", "dump_table", "load_table", "parse_table_file"]
