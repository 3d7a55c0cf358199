from typing import List, Sequence, Union

from coollab.exceptions import InvalidInput


def check_choice(value: Union[str, List[str]], allowed: Sequence[str], name: str = 'value'):
    if isinstance(value, str):
        if value not in allowed:
            raise InvalidInput(
                f'Параметр "{name}" может принимать значения {list(allowed)}, получено "{value}"')
        return value
    if isinstance(value, (list, tuple)):
        if all(x in allowed for x in value):
            return list(value)
        raise InvalidInput(
            f'Параметр "{name}" может принимать значения {list(allowed)}, получено {list(value)}')
    raise InvalidInput(f'Параметр "{name}" должен быть строкой или списком строк')
