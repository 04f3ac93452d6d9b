"""Services module: singleton service instances for dependency injection."""

from reptype.services.catalog import CatalogService
from reptype.services.classifier import ClassifierService, Report, RunFlags
from reptype.services.critical import CriticalSetService
from reptype.services.oracle import OracleService

# Singleton instances; YAML configs load lazily on first use
catalog_service = CatalogService()
critical_service = CriticalSetService()
classifier_service = ClassifierService(catalog_service, critical_service)
oracle_service = OracleService(critical_service)

__all__ = [
    "CatalogService",
    "CriticalSetService",
    "ClassifierService",
    "OracleService",
    "Report",
    "RunFlags",
    "catalog_service",
    "critical_service",
    "classifier_service",
    "oracle_service",
]
