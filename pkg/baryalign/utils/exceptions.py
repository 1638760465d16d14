"""
Jerarquía de excepciones de BaryAlign

Cada clase lleva el código de salida que usa el CLI (rango documentado 2-9).
"""

from typing import Optional


class BaryAlignError(Exception):
    """Excepción base para todos los errores del sistema"""

    exit_code: int = 1

    def __init__(self, message: str, detail: Optional[str] = None):
        super().__init__(message)
        self.detail = detail or ""


# 2 - validación de entradas

class ValidationError(BaryAlignError, ValueError):
    """Entrada inválida"""
    exit_code = 2


class MismatchedStimuli(ValidationError):
    """Los miembros del pool no comparten los mismos estímulos en el mismo orden"""


class DuplicateModelId(ValidationError):
    """model_id repetido dentro de un pool"""


class TooFewModels(ValidationError):
    """Se requieren al menos dos modelos"""


class NonFiniteData(ValidationError):
    """La matriz contiene NaN o infinitos"""


class NonFiniteInput(ValidationError):
    """Entrada no finita para el solver de Procrustes"""


class TargetTooSmall(ValidationError):
    """Ancho objetivo menor que el ancho de algún miembro"""


class ShapeMismatch(ValidationError):
    """Dimensiones incompatibles"""


class TooFewStimuli(ValidationError):
    """No hay suficientes estímulos para la métrica"""


class KTooLarge(ValidationError):
    """K fuera del rango 1..m"""


class InvalidConfig(ValidationError):
    """Valor de configuración inválido"""


# 3 - desajustes entre pool y modelo

class MismatchError(BaryAlignError, ValueError):
    """El pool no corresponde al modelo de alineamiento"""
    exit_code = 3


class UnknownModelId(MismatchError):
    """model_id sin transformación entrenada"""


class WidthMismatch(MismatchError):
    """El ancho original de un modelo difiere del de entrenamiento"""


class ModelPoolMismatch(MismatchError):
    """Las transformaciones no cubren el pool"""


class StimulusMismatch(MismatchError):
    """Los reportes no comparten estímulos"""


# 4 - formato binario

class FormatError(BaryAlignError):
    """Archivo binario inválido"""
    exit_code = 4


class BadMagic(FormatError):
    """Bytes mágicos incorrectos"""


class VersionUnsupported(FormatError):
    """Versión de formato no soportada"""


class TruncatedPayload(FormatError):
    """Longitud del payload distinta de rows*cols*8"""


# 5 - parseo de texto

class ParseError(BaryAlignError):
    """Documento de texto inválido"""
    exit_code = 5


class ManifestParse(ParseError):
    """Manifiesto de pool o bundle inválido"""


class ParseFailure(ParseError):
    """Tabla de reporte inválida"""


# 6 - sistema de archivos

class StorageIOError(BaryAlignError):
    """Error de entrada/salida"""
    exit_code = 6


class MissingFile(StorageIOError):
    """Archivo referenciado inexistente"""


class IoFailure(StorageIOError):
    """Fallo de lectura o escritura"""


# 7 - SVD

class SvdFailure(BaryAlignError):
    """La descomposición SVD no convergió"""
    exit_code = 7


# 8 - numéricos

class NumericalError(BaryAlignError):
    """Error numérico durante el entrenamiento"""
    exit_code = 8


class NumericalInstability(NumericalError):
    """El objetivo aumentó entre iteraciones"""


class DegenerateTemplate(NumericalError):
    """Plantilla con norma de Frobenius nula"""


# 9 - convergencia (solo con --strict)

class NotConverged(BaryAlignError):
    """El criterio de parada no se cumplió en max_iterations"""
    exit_code = 9
