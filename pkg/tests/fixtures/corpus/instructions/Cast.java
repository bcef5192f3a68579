package org.eclipse.jdt.internal.debug.eval.ast.instructions;

import org.eclipse.debug.core.DebugException;

/**
 * Cast instruction: checks the runtime type of the operand on top of the
 * stack and narrows it to the requested type.
 */
public class Cast extends Instruction {

    private String fTypeName;

    public void execute() {
        Object operand = popOperand();
        if (operand == null) {
            pushOperand(null);
            return;
        }
        pushOperand(narrow(operand));
    }

    private Object narrow(Object operand) {
        return operand;
    }

    private Object popOperand() {
        return null;
    }

    private void pushOperand(Object operand) {
    }
}
