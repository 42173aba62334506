#
# egcore -- Exact equilibrium analysis of the police/drivers enforcement game
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.
#
import os
import copy
import configparser
from enum import Enum
from warnings import warn
from collections import OrderedDict
from fractions import Fraction

from .exceptions import ParseError
from .tools import parse_rational


class Rational(Fraction):
    """
    Exact rational option value, written as 'p/q' or an integer. Decimals are rejected.
    """
    def __new__(cls, value=0, denominator=None):
        if denominator is not None:
            return super(Rational, cls).__new__(cls, value, denominator)
        if isinstance(value, str):
            value = parse_rational(value)
        elif isinstance(value, float):
            raise ParseError(f"decimal {value!r} is not allowed; write a rational")
        return super(Rational, cls).__new__(cls, value)


class TypedTuple(object):
    def __init__(self, data, elem_type):
        if isinstance(data, str):
            chars_ignore = ['(', ')', '[', ']', ' ']
            for c in chars_ignore:
                data = data.replace(c, '')
            data = data.strip(',')
            if data == '':
                self._data = ()
            else:
                self._data = tuple([elem_type(x) for x in data.split(',')])
        elif isinstance(data, (tuple, list)):
            self._data = tuple(elem_type(x) for x in data)
        else:
            raise ParseError(f"Invalid data for {type(self).__name__}: {data!r}")

    def __repr__(self):
        """
        Return a string representation like (1, 2, 3).

        :return: str
        """
        return '(' + ' , '.join([str(x) for x in self._data]) + ')'

    def __len__(self):
        return len(self._data)

    def __eq__(self, other):
        if not isinstance(other, TypedTuple):
            return NotImplemented
        return self._data == other._data

    def to_tuple(self):
        assert isinstance(self._data, tuple)
        return self._data


def _int(x):
    try:
        return int(x)
    except ValueError:
        raise ParseError(f"{x!r} is not an integer")


class IntTuple(TypedTuple):
    def __init__(self, data):
        if isinstance(data, IntTuple):
            self._data = data._data
        else:
            super(IntTuple, self).__init__(data, _int)


class RationalTuple(TypedTuple):
    def __init__(self, data):
        if isinstance(data, RationalTuple):
            self._data = data._data
        else:
            super(RationalTuple, self).__init__(data, Rational)


class OptionStatus(Enum):
    VALID = 0
    DEPRECATED = 1
    RETIRED = 2


def cast(value_type, string, location=None):
    try:
        if value_type == bool:
            if string in ['true', 'True']:
                return True
            elif string in ['false', 'False']:
                return False
            else:
                raise ValueError("Cannot cast string " + string + " to bool.")
        return value_type(string)
    except ParseError as e:
        raise ParseError(str(e), location)
    except ValueError as e:
        raise ParseError(str(e), location)


class TypedParser(object):
    """
    Parser of an ini file. One is able to define options and sections (data types and default values).
    """
    def __init__(self, sections_to_be_used=()):
        self.__config_parser = configparser.ConfigParser()
        self.__config_parser.optionxform = str

        self.__definitions = OrderedDict()
        self.__results = OrderedDict()
        self.__section_to_be_used = list(sections_to_be_used)

        self.__read = False

    def add_option(self, section, option, dtype, default, string, status=OptionStatus.VALID):
        """
        :param section: section name
        :param option: option name
        :param dtype: data type
        :param default: default value (None for options without a default)
        :param string: short description
        :param status: VALID, DEPRECATED, or RETIRED
        """

        if section not in self.__section_to_be_used:
            return

        if self.__read:
            raise RuntimeError("Do not add option after an input file has been read!")

        if section in self.__definitions and option in self.__definitions[section]:
            raise RuntimeError("Redefinition of an option is not allowed!")

        if section not in self.__definitions:
            self.__definitions[section] = OrderedDict()

        if section not in self.__results:
            self.__results[section] = OrderedDict()

        value = None if default is None else dtype(default)
        self.__definitions[section][option] = {'dtype': dtype,
                                               'description': string,
                                               'default': value,
                                               'status': status}
        self.__results[section][option] = value

    def read(self, in_files):
        """
        Read an ini file. This function must not be called more than once.

        :param in_files: str or list of str
        """
        if self.__read:
            raise RuntimeError("An input file has been already read!")

        self.__read = True

        assert isinstance(in_files, (str, list))
        if isinstance(in_files, str):
            in_files = [in_files]

        for in_file in in_files:
            if not os.path.exists(in_file):
                raise ParseError("file not found", in_file)
        try:
            self.__config_parser.read(in_files)
        except configparser.Error as e:
            raise ParseError(str(e).replace('\n', ' '), in_files[-1])
        self._collect(in_files[-1])

    def read_string(self, text, location='<string>'):
        """ Same as read() for the content of an ini file """
        if self.__read:
            raise RuntimeError("An input file has been already read!")
        self.__read = True
        try:
            self.__config_parser.read_string(text, source=location)
        except configparser.Error as e:
            raise ParseError(str(e).replace('\n', ' '), location)
        self._collect(location)

    def _collect(self, location):
        for sect in self.__config_parser.sections():
            if sect not in self.__section_to_be_used:
                continue

            for opt in self.__config_parser.options(sect):
                value = self.__config_parser.get(sect, opt).strip('\'').strip('"')
                if sect not in self.__definitions or opt not in self.__definitions[sect]:
                    raise ParseError(f"Parameter '{opt}' is not allowed in section [{sect}]", location)
                definition = self.__definitions[sect][opt]
                if definition['status'] == OptionStatus.DEPRECATED:
                    warn("Parameter {0} [{1}] is deprecated.".format(opt, sect))
                if definition['status'] == OptionStatus.RETIRED:
                    warn("Parameter {0} [{1}] is not used anymore.".format(opt, sect))
                self.__results[sect][opt] = cast(definition['dtype'], value, f"{location}: [{sect}] {opt}")

    def set(self, sect, opt, value):
        """
        Override the value of a predefined option (used for command-line flags)
        """
        if sect not in self.__definitions or opt not in self.__definitions[sect]:
            raise ParseError(f"Parameter '{opt}' is not defined in section [{sect}]")
        dtype = self.__definitions[sect][opt]['dtype']
        self.__results[sect][opt] = value if isinstance(value, dtype) else cast(dtype, value, f"[{sect}] {opt}")

    def get(self, sect, opt):
        """
        Get the value of the given option in the given section

        :param sect: section name
        :param opt:  option name
        :return: value
        """
        return self.__results[sect][opt]

    def get_type(self, sect, opt):
        """
        Get the type of a given option
        """
        return self.__definitions[sect][opt]['dtype']

    def get_description(self, sect, opt):
        """
        Get the description of a given option
        """
        return self.__definitions[sect][opt]['description']

    def get_default_value(self, sect, opt):
        """
        Get the default value of a given option
        """
        return self.__definitions[sect][opt]['default']

    def get_predefined_sections(self):
        """
        Get a list of sections predefined by add_option()
        """
        return list(self.__definitions.keys())

    def get_predefined_options(self, section):
        """
        Get a list of options predefined by add_option() in a given section
        """
        return list(self.__definitions[section].keys())

    def as_dict(self):
        """
        Convert all options and their values into a dict object

        :return: dict object
        """

        def convert_ordered_dict_to_dict(obj):
            if isinstance(obj, OrderedDict):
                r = {}
                for key, val in list(obj.items()):
                    r[key] = convert_ordered_dict_to_dict(val)
                return r
            else:
                return copy.deepcopy(obj)

        return convert_ordered_dict_to_dict(self.__results)
