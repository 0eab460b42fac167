"""Manager modules for Facsum."""

from facsum.managers.sequences import SequenceManager
from facsum.managers.report import ReportManager
