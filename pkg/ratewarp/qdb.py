# Copyright 2026 The ratewarp developers
#
# This file is part of ratewarp.
#
# ratewarp is free software; you can redistribute it and/or modify
# it under the terms of the GNU Lesser General Public License as published by
# the Free Software Foundation; either version 2 of the License, or
# (at your option) any later version.
#
# ratewarp is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public License
# along with ratewarp; if not, write to the Free Software
# Foundation, Inc., 51 Franklin St, Fifth Floor, Boston, MA  02110-1301  USA
#

class QDB:
  """ A small table of equally long columns, queried by matching one column
      against a value. The weight manifest (tensor name, shape, byte offset)
      lives in one. """

  def __init__(self):
    self.columns = {}
    self.n_rows  = 0

  def addList(self, list_name, new_list):
    """ Add a column. All columns must have the same number of rows. """

    new_list = list(new_list)
    if (list_name in self.columns):
      raise ValueError("Column %s already exists" % list_name)
    if (self.columns) and (len(new_list) != self.n_rows):
      raise ValueError("Column %s has %d rows, the table has %d" % (list_name, len(new_list), self.n_rows))

    self.columns[list_name] = new_list
    self.n_rows = len(new_list)

  def getList(self, var_name):
    try:
      return self.columns[var_name]
    except KeyError:
      raise KeyError("No column named %s" % var_name) from None

  def appendValue(self, *args):
    """ Append a row, given as "name1", value1, "name2", value2, ... naming
        every column once. """

    if (len(args) % 2 != 0):
      raise TypeError("appendValue takes name, value pairs")

    row = dict(zip(args[0::2], args[1::2]))
    if (len(row) != len(args) // 2) or (set(row) != set(self.columns)):
      raise KeyError("appendValue needs exactly the columns %s" % ", ".join(self.columns))

    for name, value in row.items():
      self.columns[name].append(value)
    self.n_rows += 1

  def query(self, key_var_name, condition, return_var_name = None):
    """ The rows where key_var_name equals condition: their values of
        return_var_name, or their indices if it is not given. One match comes
        back as such, several as a list, none as None. """

    keys = self.getList(key_var_name)
    matches = [index for index, value in enumerate(keys) if (value == condition)]
    if (return_var_name is not None):
      values = self.getList(return_var_name)
      matches = [values[index] for index in matches]

    if (len(matches) == 0):
      return None
    if (len(matches) == 1):
      return matches[0]
    return matches

  def __len__(self):
    return self.n_rows
