"""
Jerarquía de excepciones del paquete.

Las violaciones de propiedades (axiomas que fallan, desigualdades falsificadas,
diagnósticos que no pasan) NO son excepciones: viajan como veredictos en los
reportes. Aquí sólo viven los errores de uso y de contrato.
"""

from typing import Optional


class EnrichedError(Exception):
    """Raíz de todos los errores del paquete."""


class ContractViolationError(EnrichedError, ValueError):
    """Entrada que no cumple la precondición de una operación
    (dimensión incorrecta, coordenadas no finitas, argumentos negativos, u = v...)."""


class InvalidSpecError(EnrichedError, ValueError):
    """Especificación de contracción inválida (k >= 1, b negativo, familia desconocida...)."""


class IterationOverflowError(EnrichedError, ArithmeticError):
    """Un iterado excedió el límite de magnitud o dejó de ser finito."""

    def __init__(self, message: str, iteration: int):
        super().__init__(message)
        self.iteration = iteration


class UncertifiedFixedPointError(EnrichedError, ValueError):
    """El punto p entregado a los diagnósticos no tiene residuo certificado."""


class ConfigError(EnrichedError, ValueError):
    """Error de archivo de configuración, con línea y campo."""

    def __init__(self, message: str, path: str = "<config>",
                 line: Optional[int] = None, field: Optional[str] = None):
        self.path = path
        self.line = line
        self.field = field
        self.message = message
        super().__init__(self.__str__())

    def __str__(self) -> str:
        where = f"{self.path}:{self.line}" if self.line is not None else self.path
        tag = f" [{self.field}]" if self.field else ""
        return f"{where}:{tag} {self.message}"
