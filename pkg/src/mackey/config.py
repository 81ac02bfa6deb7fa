from dataclasses import dataclass

from .finite_group import DEFAULT_ORDER_BOUND


@dataclass
class Settings:
    order_bound: int = DEFAULT_ORDER_BOUND
    seed: int = 0  # for the random search in find_iso
    iso_tries: int = 40
    check_relations: bool = True  # assert induced actions respect coend relations
