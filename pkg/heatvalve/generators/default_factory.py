from heatvalve.generators.abstract_factory import AbstractGeneratorFactory
from heatvalve.generators.full_secular_generator import FullSecularGenerator
from heatvalve.generators.partial_secular_generator import PartialSecularGenerator
from heatvalve.generators.redfield_generator import RedfieldGenerator
from heatvalve.generators.unified_generator import UnifiedGenerator
from heatvalve.models.method import (
    FullSecularMethod,
    GeneratorMethod,
    PartialSecularMethod,
    RedfieldMethod,
    UnifiedMethod,
)


class DefaultGeneratorFactory(AbstractGeneratorFactory):
    def create_generator(
        self,
        method: GeneratorMethod,
    ):
        if isinstance(method, RedfieldMethod):
            return RedfieldGenerator(method)
        elif isinstance(method, PartialSecularMethod):
            return PartialSecularGenerator(method)
        elif isinstance(method, FullSecularMethod):
            return FullSecularGenerator(method)
        elif isinstance(method, UnifiedMethod):
            return UnifiedGenerator(method)
        else:
            raise Exception("Invalid generator method")
