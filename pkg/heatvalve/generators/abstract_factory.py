from abc import ABC, abstractmethod

from heatvalve.generators.base_generator import BaseGenerator
from heatvalve.models.method import GeneratorMethod


class AbstractGeneratorFactory(ABC):
    @abstractmethod
    def create_generator(
        self,
        method: GeneratorMethod,
    ) -> BaseGenerator:
        pass
