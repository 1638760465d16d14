"""
Utilidades para validación de datos
"""

import re
from typing import List, Tuple, Union


class Validators:
    """Validadores de datos comunes"""

    @staticmethod
    def validate_model_id(model_id: str) -> bool:
        """Validar identificador de modelo (también se usa como nombre de archivo)"""
        if not model_id or len(model_id) > 200:
            return False

        pattern = r"^[A-Za-z0-9][A-Za-z0-9._\-]*$"
        return bool(re.match(pattern, model_id))

    @staticmethod
    def validate_stimulus_id(stimulus_id: str) -> bool:
        """Validar identificador de estímulo (una línea, sin tabuladores)"""
        if not stimulus_id or stimulus_id != stimulus_id.strip():
            return False
        return not re.search(r"[\t\r\n]", stimulus_id)

    @staticmethod
    def validate_positive(value: Union[int, float, str], integer: bool = False) -> bool:
        """Validar número estrictamente positivo"""
        try:
            number = int(value) if integer else float(value)
        except (ValueError, TypeError):
            return False
        if integer and isinstance(value, float) and not value.is_integer():
            return False
        return number > 0

    @staticmethod
    def validate_similarity(kind: str) -> bool:
        """Validar tipo de similitud"""
        from ..similarity import SimilarityFactory
        return kind in SimilarityFactory.get_supported_kinds()

    @staticmethod
    def parse_int_list(text: str) -> Tuple[bool, List[int]]:
        """
        Parsear lista de enteros positivos separados por comas ("1,5,10")
        Returns: (is_valid, values)
        """
        if not text or not text.strip():
            return False, []

        values = []
        for part in text.split(","):
            part = part.strip()
            if not re.match(r"^[0-9]+$", part) or int(part) < 1:
                return False, []
            values.append(int(part))

        return True, values

    @staticmethod
    def parse_id_list(text: str) -> Tuple[bool, List[str]]:
        """
        Parsear lista de model_id separados por comas
        Returns: (is_valid, ids)
        """
        if not text:
            return False, []

        ids = [part.strip() for part in text.split(",") if part.strip()]
        if not ids or not all(Validators.validate_model_id(i) for i in ids):
            return False, ids
        return True, ids
